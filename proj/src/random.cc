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

#include "shuffle_rdp/random.h"

#include <algorithm>
#include <cmath>

#include "shuffle_rdp/errors.h"

namespace shuffle_rdp {
namespace {

constexpr int kMaxRejectionRounds = 100000;
constexpr double kSlack = 1e-9;

double PairLdpParameter(const std::vector<double>& p,
                        const std::vector<double>& pprime) {
  double worst = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    worst = std::max(worst, std::fabs(std::log(pprime[j] / p[j])));
  }
  return worst;
}

}  // namespace

std::vector<double> SeededRng::Simplex(int size) {
  std::vector<double> out(size);
  double sum = 0.0;
  for (double& v : out) {
    v = -std::log(1.0 - UniformUnit());
    v = std::max(v, 1e-12);
    sum += v;
  }
  for (double& v : out) v /= sum;
  return out;
}

std::pair<std::vector<double>, std::vector<double>> SampleLdpPair(
    double eps0, int num_bins, SeededRng& rng) {
  if (!(eps0 >= 0) || num_bins < 2) {
    throw PreconditionError("pair sampling needs eps0 >= 0 and num_bins >= 2");
  }
  if (eps0 == 0) {
    std::vector<double> p = rng.Simplex(num_bins);
    return {p, p};
  }
  for (int round = 0; round < kMaxRejectionRounds; ++round) {
    std::vector<double> p = rng.Simplex(num_bins);
    std::vector<double> pprime(num_bins);
    double sum = 0.0;
    for (int j = 0; j < num_bins; ++j) {
      pprime[j] = p[j] * std::exp(rng.UniformIn(-eps0 / 2, eps0 / 2));
      sum += pprime[j];
    }
    for (double& v : pprime) v /= sum;
    if (PairLdpParameter(p, pprime) <= eps0 - kSlack) return {p, pprime};
  }
  throw PreconditionError("pair sampling failed to satisfy the ratio bound");
}

std::pair<std::vector<double>, std::vector<double>> SampleVertexPair(
    double eps0, int num_bins, SeededRng& rng) {
  if (!(eps0 > 0) || num_bins < 2) {
    throw PreconditionError("vertex sampling needs eps0 > 0 and num_bins >= 2");
  }
  const double e = std::exp(eps0);
  // Ratios sit at e^{+eps0} on a nonempty proper subset of bins; the
  // probability assigned to that subset is pinned to 1/(e^{eps0}+1).
  const int up_count = rng.UniformInt(1, num_bins - 1);
  std::vector<int> bins(num_bins);
  for (int j = 0; j < num_bins; ++j) bins[j] = j;
  for (int j = num_bins - 1; j > 0; --j) {
    std::swap(bins[j], bins[rng.UniformInt(0, j)]);
  }
  const std::vector<double> up_weights = rng.Simplex(up_count);
  const std::vector<double> down_weights = rng.Simplex(num_bins - up_count);
  std::vector<double> p(num_bins, 0.0);
  std::vector<double> pprime(num_bins, 0.0);
  for (int idx = 0; idx < up_count; ++idx) {
    const int j = bins[idx];
    p[j] = up_weights[idx] / (e + 1.0);
    pprime[j] = p[j] * e;
  }
  for (int idx = up_count; idx < num_bins; ++idx) {
    const int j = bins[idx];
    p[j] = down_weights[idx - up_count] * e / (e + 1.0);
    pprime[j] = p[j] / e;
  }
  return {p, pprime};
}

DiscreteMechanism SampleLdpMechanism(double eps0, int num_inputs, int num_bins,
                                     SeededRng& rng) {
  if (!(eps0 >= 0) || num_inputs < 2 || num_bins < 2) {
    throw PreconditionError(
        "mechanism sampling needs eps0 >= 0, num_inputs >= 2, num_bins >= 2");
  }
  if (eps0 == 0) {
    DiscreteMechanism mech;
    mech.num_bins = num_bins;
    mech.declared_eps0 = 0.0;
    mech.rows.assign(num_inputs, rng.Simplex(num_bins));
    mech.Validate();
    return mech;
  }
  for (int round = 0; round < kMaxRejectionRounds; ++round) {
    const std::vector<double> base = rng.Simplex(num_bins);
    DiscreteMechanism mech;
    mech.num_bins = num_bins;
    mech.declared_eps0 = eps0;
    mech.rows.resize(num_inputs);
    for (int r = 0; r < num_inputs; ++r) {
      mech.rows[r].resize(num_bins);
      double sum = 0.0;
      for (int j = 0; j < num_bins; ++j) {
        mech.rows[r][j] = base[j] * std::exp(rng.UniformIn(-eps0 / 2, eps0 / 2));
        sum += mech.rows[r][j];
      }
      for (double& v : mech.rows[r]) v /= sum;
    }
    if (mech.LdpParameter() <= eps0 - kSlack) {
      mech.Validate();
      return mech;
    }
  }
  throw PreconditionError("mechanism sampling failed to satisfy eps0");
}

std::pair<Dataset, Dataset> SampleNeighborDatasets(
    const DiscreteMechanism& mech, int n, SeededRng& rng) {
  if (n < 1) throw PreconditionError("datasets need n >= 1");
  const int num_inputs = static_cast<int>(mech.rows.size());
  Dataset dataset(n);
  for (int i = 0; i < n; ++i) dataset[i] = rng.UniformInt(0, num_inputs - 1);
  Dataset neighbor = dataset;
  // Force the differing entry to actually differ.
  neighbor.back() =
      (dataset.back() + rng.UniformInt(1, num_inputs - 1)) % num_inputs;
  return {dataset, neighbor};
}

}  // namespace shuffle_rdp
