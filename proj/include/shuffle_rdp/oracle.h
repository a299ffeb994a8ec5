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
// Exact, enumeration-based shuffled-model divergences at desk scale.
// These certify the closed-form bounds and the structural identities
// the bounds rest on (mixture decomposition, monotonicity under client
// removal, moment identities, the extremal-variance supremum).

#ifndef SHUFFLE_RDP_ORACLE_H_
#define SHUFFLE_RDP_ORACLE_H_

#include <cstdint>
#include <vector>

#include "shuffle_rdp/errors.h"

namespace shuffle_rdp {

// Per-input output distributions of a finite-range local randomizer.
// Row r is the distribution of the randomizer's output on input symbol r.
struct DiscreteMechanism {
  int num_bins = 1;
  std::vector<std::vector<double>> rows;
  double declared_eps0 = 0.0;

  // Rows sum to 1 within 1e-12, entries are nonnegative, a zero entry
  // appears only in bins that are zero across every row, and the
  // realized likelihood-ratio bound does not exceed declared_eps0.
  void Validate() const;

  // max over bins and row pairs of |ln(p_dj / p_d'j)|, skipping bins
  // that are zero in every row.
  double LdpParameter() const;
};

// Input symbol per client.
using Dataset = std::vector<int>;

// Number of B-bin histograms with n balls: C(n + B - 1, B - 1).
// Exceeding the 10^6 enumeration budget raises a PreconditionError.
std::int64_t HistogramCount(std::int64_t n, int num_bins);

// All histograms of n balls in num_bins bins, in colexicographic order
// (the deterministic iteration order used throughout).
std::vector<std::vector<int>> EnumerateHistograms(int n, int num_bins);

// Colex rank of a histogram within the enumeration above.
std::int64_t ColexRank(const std::vector<int>& histogram);

// Exact probability mass over the histograms of n balls in B bins,
// indexed by colex rank.
struct HistogramDistribution {
  int n = 0;
  int num_bins = 1;
  std::vector<double> mass;

  double TotalMass() const;
};

// Exact output distribution of the shuffled mechanism on a dataset:
// sequential convolution of the clients' rows starting from the point
// mass on the zero histogram.
HistogramDistribution ShuffleDistribution(const DiscreteMechanism& mech,
                                          const Dataset& dataset);

// log sum_h Q(h) (P(h)/Q(h))^lambda = log sum_h P(h)^lambda Q(h)^{1-lambda}.
// +inf when P puts mass outside Q's support.
double LogPowerExpectation(const HistogramDistribution& p,
                           const HistogramDistribution& q, double lambda);

// (1/(lambda-1)) log sum_h Q(h) (P(h)/Q(h))^lambda, clamped at 0;
// +inf sentinel on a support violation.
double RenyiDivergence(const HistogramDistribution& p,
                       const HistogramDistribution& q, double lambda);

enum class TwoRrDirection { kDToDprime, kDprimeToD };

// Exact order-lambda Renyi divergence of shuffled binary randomized
// response between the all-zeros dataset D and D' flipping one entry,
// via the closed-form likelihood ratio in the one-count statistic
// k ~ Bin(n, 1/(e^{eps0}+1)).  kDprimeToD is D_lambda(M(D') || M(D)),
// the direction the closed-form lower bound equals exactly.
double Exact2RrRenyi(double eps0, std::int64_t n, std::int64_t lambda,
                     TwoRrDirection direction);

// Verifies the mixture decomposition of the shuffled output: replacing
// each non-differing client's row by the convex combination
// q * p'_n + (1-q) * ptilde_i and expanding over the 2^{n-1} choices
// reproduces the exact distribution entrywise within tol.  Throws if a
// ptilde entry is negative beyond -1e-12 (the mechanism is then not
// eps0-LDP at its declared eps0).
bool MixtureDecompositionCheck(const DiscreteMechanism& mech,
                               const Dataset& dataset,
                               const Dataset& neighbor, double tol);

// Verifies that dropping any non-differing client never decreases the
// lambda-power expectation (the smaller-instance value dominates).
bool MonotonicityCheck(const DiscreteMechanism& mech, const Dataset& dataset,
                       const Dataset& neighbor, double lambda);

// E_m of the special pair: log of the lambda-power expectation between
// the size-`size` datasets (d', ..., d', d) and (d', ..., d'), rows
// p_row for d and pprime_row for d'.
double LogSpecialPairPowerExpectation(const std::vector<double>& p_row,
                                      const std::vector<double>& pprime_row,
                                      int size, double lambda);

// Verifies the reduction of an arbitrary neighboring pair to the
// binomial mixture of special pairs: the full-instance power
// expectation is at most E_{m ~ Bin(n-1, q)}[E_m].
bool ReductionCheck(const DiscreteMechanism& mech, const Dataset& dataset,
                    const Dataset& neighbor, double lambda);

// Exact divergence for the special (all-identical vs one-off) pair via
// the multinomial closed form:
//   (1/(lambda-1)) log E_{h~MN(m,p)}[(sum_j (p'_j/p_j) h_j / m)^lambda].
// B = 2 instances beyond the enumeration budget reduce to a windowed
// binomial summation (m up to 10^4).
double SpecialCaseDivergence(double eps0, int m, const std::vector<double>& p,
                             const std::vector<double>& pprime, double lambda);

// Exact moments of X(h) = sum_j (p'_j/p_j) h_j - m under MN(m, p),
// against the closed-form mean/variance and the sub-Gaussian caps
// i * Gamma(i/2) * (2 m nu^2)^{i/2}, nu^2 = (e^{eps0} - e^{-eps0})^2 / 4.
struct MomentReport {
  double mean = 0.0;
  double variance = 0.0;
  double expected_variance = 0.0;
  bool mean_ok = false;
  bool variance_ok = false;
  std::vector<double> moments;       // orders 3..max_order
  std::vector<double> abs_moments;   // same orders, E|X|^i
  std::vector<double> caps;
  bool caps_ok = false;

  bool AllOk() const { return mean_ok && variance_ok && caps_ok; }
};

MomentReport MomentIdentitiesCheck(int m, const std::vector<double>& p,
                                   const std::vector<double>& pprime,
                                   int max_order, double eps0);

// sup over pairs with likelihood ratios in [e^{-eps0}, e^{eps0}] of
// sum_j p'_j^2 / p_j - 1, equal to (e^{eps0} - 1)^2 / e^{eps0}.
double SupVarianceVertex(double eps0);

// sum_j p'_j^2 / p_j - 1 for a concrete pair (the quantity the supremum
// caps).
double VarianceTerm(const std::vector<double>& p,
                    const std::vector<double>& pprime);

// The two-bin extremal pair achieving SupVarianceVertex:
// p = (1/(e^{eps0}+1), e^{eps0}/(e^{eps0}+1)) and p' reversed.
void TwoBinVertex(double eps0, std::vector<double>& p,
                  std::vector<double>& pprime);

}  // namespace shuffle_rdp

#endif  // SHUFFLE_RDP_ORACLE_H_
