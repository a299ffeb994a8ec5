// Copyright 2026 The Shuffle RDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Seeded generation of random LDP mechanisms and distribution pairs for
// the verification suites.  Doubles are derived from the raw mt19937_64
// stream directly so the sequences are reproducible across standard
// library implementations.

#ifndef SHUFFLE_RDP_RANDOM_H_
#define SHUFFLE_RDP_RANDOM_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "shuffle_rdp/oracle.h"

namespace shuffle_rdp {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double UniformUnit() { return (gen_() >> 11) * 0x1.0p-53; }

  double UniformIn(double lo, double hi) {
    return lo + (hi - lo) * UniformUnit();
  }

  // Uniform integer in [lo, hi], inclusive.
  int UniformInt(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

  // A point of the probability simplex (normalized exponentials).
  std::vector<double> Simplex(int size);

 private:
  std::mt19937_64 gen_;
};

// A pair (p, p') with likelihood ratios inside [e^{-eps0}, e^{eps0}]:
// p from the flat simplex, p' a multiplicative perturbation of p,
// renormalized and rejected until the pair satisfies the constraint
// with 1e-9 slack.
std::pair<std::vector<double>, std::vector<double>> SampleLdpPair(
    double eps0, int num_bins, SeededRng& rng);

// A vertex of the ratio polytope: every ratio sits at e^{+eps0} or
// e^{-eps0}; these attain the extremal variance term exactly.
std::pair<std::vector<double>, std::vector<double>> SampleVertexPair(
    double eps0, int num_bins, SeededRng& rng);

// A random eps0-LDP mechanism: a flat base row perturbed multiplicatively
// per input, renormalized, rejected until every row pair respects the
// declared eps0 with 1e-9 slack.  Rows are strictly positive.
DiscreteMechanism SampleLdpMechanism(double eps0, int num_inputs, int num_bins,
                                     SeededRng& rng);

// A dataset of n symbols plus a neighbor differing in the last entry.
std::pair<Dataset, Dataset> SampleNeighborDatasets(
    const DiscreteMechanism& mech, int n, SeededRng& rng);

}  // namespace shuffle_rdp

#endif  // SHUFFLE_RDP_RANDOM_H_
