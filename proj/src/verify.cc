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

#include "shuffle_rdp/verify.h"

#include <cmath>

#include "shuffle_rdp/bounds.h"
#include "shuffle_rdp/numerics.h"
#include "shuffle_rdp/oracle.h"
#include "shuffle_rdp/random.h"

namespace shuffle_rdp {
namespace {

constexpr double kGridEps0[] = {0.1, 0.5, 1.0, 2.0, 3.0};
constexpr std::int64_t kGridN[] = {100, 1000, 10000, 1000000};
constexpr std::int64_t kGridLambda[] = {2, 4, 8, 16, 32, 64};

DiscreteMechanism BinaryRrMechanism(double eps0) {
  const double e = std::exp(eps0);
  DiscreteMechanism mech;
  mech.num_bins = 2;
  mech.declared_eps0 = eps0;
  mech.rows = {{e / (e + 1.0), 1.0 / (e + 1.0)},
               {1.0 / (e + 1.0), e / (e + 1.0)}};
  return mech;
}

class SuiteBuilder {
 public:
  explicit SuiteBuilder(std::string name) { report_.suite = std::move(name); }

  void Check(const std::string& property, bool pass,
             const std::string& detail = "") {
    report_.results.push_back(PropertyResult{property, pass, detail});
  }

  SuiteReport Take() { return std::move(report_); }

 private:
  SuiteReport report_;
};

SuiteReport GammaSuite(std::uint64_t /*seed*/) {
  SuiteBuilder suite("gamma");
  bool all = true;
  for (int lambda = 3; lambda <= 128; ++lambda) {
    for (int k = 3; k <= lambda; ++k) {
      all = all && GammaInequalityHolds(lambda, k);
    }
  }
  suite.Check("binom(lambda,k)*k*Gamma(k/2) <= lambda^k for lambda <= 128",
              all);
  return suite.Take();
}

SuiteReport SandwichSuite(std::uint64_t /*seed*/) {
  SuiteBuilder suite("sandwich");
  bool lb_le_ub1 = true;
  bool lb_le_ub2 = true;
  bool ub1_le_ub2 = true;
  bool envelope = true;
  bool lb2_exact = true;
  bool baseline_gap = true;
  bool scaled_eps_monotone = true;

  for (double eps0 : kGridEps0) {
    for (std::int64_t n : kGridN) {
      ShuffleParams params{eps0, n};
      double prev_scaled_ub1 = 0.0;
      double prev_scaled_ub2 = 0.0;
      double prev_scaled_lb = 0.0;
      for (std::int64_t lambda : kGridLambda) {
        const double lb = LowerBound(params, lambda);
        const double ub1 = UpperBound1(params, lambda);
        const double ub2 = UpperBound2(params, static_cast<double>(lambda));
        lb_le_ub1 = lb_le_ub1 && lb <= ub1 * (1 + 1e-12) + 1e-15;
        lb_le_ub2 = lb_le_ub2 && lb <= ub2 * (1 + 1e-12) + 1e-15;
        ub1_le_ub2 = ub1_le_ub2 && ub1 <= ub2 * (1 + 1e-12) + 1e-15;
        const double scaled_ub1 = (lambda - 1) * ub1;
        const double scaled_ub2 = (lambda - 1) * ub2;
        const double scaled_lb = (lambda - 1) * lb;
        scaled_eps_monotone = scaled_eps_monotone &&
                              scaled_ub1 >= prev_scaled_ub1 - 1e-12 &&
                              scaled_ub2 >= prev_scaled_ub2 - 1e-12 &&
                              scaled_lb >= prev_scaled_lb - 1e-12;
        prev_scaled_ub1 = scaled_ub1;
        prev_scaled_ub2 = scaled_ub2;
        prev_scaled_lb = scaled_lb;
        if (4 * std::log(static_cast<double>(lambda)) + 5 * eps0 <
            std::log(static_cast<double>(n) / 9.0)) {
          const double simple = UpperBound1Simplified(params, lambda);
          envelope = envelope && ub1 <= simple * (1 + 1e-12) + 1e-15;
        }
        if (eps0 >= 0.5 && n >= 1000 && lambda >= 8) {
          baseline_gap =
              baseline_gap &&
              ErlingssonBaseline(params, static_cast<double>(lambda)) >=
                  ub1 * (1 - 1e-12);
        }
      }
      lb2_exact = lb2_exact &&
                  LowerBound(params, 2) == LowerBoundSimplified(params, 2);
    }
  }
  suite.Check("lower_bound <= ub1 on the grid", lb_le_ub1);
  suite.Check("lower_bound <= ub2 on the grid", lb_le_ub2);
  suite.Check("ub1 <= ub2 on the grid", ub1_le_ub2);
  suite.Check("ub1 <= ub1_simplified wherever the guard holds", envelope);
  suite.Check("lower_bound(2) == lower_bound_simplified(2) exactly", lb2_exact);
  suite.Check("erlingsson >= ub1 for eps0 >= 0.5, n >= 1e3, lambda >= 8",
              baseline_gap);
  suite.Check("(lambda-1)*eps(lambda) non-decreasing along curves",
              scaled_eps_monotone);

  bool monotone_n = true;
  bool monotone_eps0 = true;
  for (std::int64_t lambda : kGridLambda) {
    for (double eps0 : kGridEps0) {
      double prev[3] = {kPosInf, kPosInf, kPosInf};
      for (std::int64_t n : kGridN) {
        ShuffleParams params{eps0, n};
        const double vals[3] = {LowerBound(params, lambda),
                                UpperBound1(params, lambda),
                                UpperBound2(params,
                                            static_cast<double>(lambda))};
        for (int i = 0; i < 3; ++i) {
          monotone_n = monotone_n && vals[i] <= prev[i] * (1 + 1e-12) + 1e-15;
          prev[i] = vals[i];
        }
      }
    }
    for (std::int64_t n : kGridN) {
      double prev[3] = {0.0, 0.0, 0.0};
      for (double eps0 : kGridEps0) {
        ShuffleParams params{eps0, n};
        const double vals[3] = {LowerBound(params, lambda),
                                UpperBound1(params, lambda),
                                UpperBound2(params,
                                            static_cast<double>(lambda))};
        for (int i = 0; i < 3; ++i) {
          monotone_eps0 =
              monotone_eps0 && vals[i] >= prev[i] * (1 - 1e-12) - 1e-15;
          prev[i] = vals[i];
        }
      }
    }
  }
  suite.Check("bounds non-increasing in n", monotone_n);
  suite.Check("bounds non-decreasing in eps0", monotone_eps0);
  return suite.Take();
}

SuiteReport OracleSuite(std::uint64_t seed) {
  SuiteBuilder suite("oracle");
  SeededRng rng(seed);

  bool consistency = true;
  for (int trial = 0; trial < 40; ++trial) {
    const double eps0 = 0.25 + 2.0 * rng.UniformUnit();
    const int num_bins = rng.UniformInt(2, 4);
    const int m = rng.UniformInt(1, 6);
    const auto [p, pprime] = SampleLdpPair(eps0, num_bins, rng);
    for (double lambda : {2.0, 3.0}) {
      const double direct = SpecialCaseDivergence(eps0, m, p, pprime, lambda);
      DiscreteMechanism mech;
      mech.num_bins = num_bins;
      mech.declared_eps0 = eps0;
      mech.rows = {p, pprime};
      Dataset same(m, 0);
      Dataset off = same;
      off.back() = 1;
      const double via_shuffle =
          RenyiDivergence(ShuffleDistribution(mech, off),
                          ShuffleDistribution(mech, same), lambda);
      consistency = consistency &&
                    std::fabs(direct - via_shuffle) <=
                        1e-10 * std::max(1.0, std::fabs(via_shuffle));
    }
  }
  suite.Check("special-case divergence matches shuffle enumeration",
              consistency);

  bool exactness = true;
  for (double eps0 : {0.1, 1.0, 3.0}) {
    for (std::int64_t n : {10, 100, 1000}) {
      for (std::int64_t lambda : {2, 3, 4, 8}) {
        ShuffleParams params{eps0, n};
        const double lb = LowerBound(params, lambda);
        const double rr =
            Exact2RrRenyi(eps0, n, lambda, TwoRrDirection::kDprimeToD);
        exactness = exactness &&
                    std::fabs(lb - rr) <= 1e-10 * std::max(1.0, std::fabs(rr));
      }
    }
  }
  suite.Check("lower_bound equals exact 2RR divergence", exactness);

  bool certified = true;
  for (int trial = 0; trial < 50; ++trial) {
    const double eps0 = 0.2 + 1.8 * rng.UniformUnit();
    const int num_bins = rng.UniformInt(2, 4);
    const int num_inputs = rng.UniformInt(2, 3);
    const int n = rng.UniformInt(2, 8);
    const DiscreteMechanism mech =
        SampleLdpMechanism(eps0, num_inputs, num_bins, rng);
    const auto [dataset, neighbor] = SampleNeighborDatasets(mech, n, rng);
    const HistogramDistribution dist = ShuffleDistribution(mech, dataset);
    const HistogramDistribution dist_neighbor =
        ShuffleDistribution(mech, neighbor);
    ShuffleParams params{eps0, n};
    for (std::int64_t lambda : {2, 3, 4}) {
      const double ub1 = UpperBound1(params, lambda);
      const double ub2 = UpperBound2(params, static_cast<double>(lambda));
      const double forward =
          RenyiDivergence(dist, dist_neighbor, static_cast<double>(lambda));
      const double backward =
          RenyiDivergence(dist_neighbor, dist, static_cast<double>(lambda));
      const double worst = std::max(forward, backward);
      certified = certified && worst <= ub1 * (1 + 1e-10) + 1e-12 &&
                  worst <= ub2 * (1 + 1e-10) + 1e-12;
    }
  }
  suite.Check("exact divergences stay below both upper bounds", certified);
  return suite.Take();
}

SuiteReport MomentsSuite(std::uint64_t seed) {
  SuiteBuilder suite("moments");
  SeededRng rng(seed);

  bool identities = true;
  for (int trial = 0; trial < 40; ++trial) {
    const double eps0 = 0.25 + 2.25 * rng.UniformUnit();
    const int num_bins = rng.UniformInt(2, 4);
    const int m = rng.UniformInt(1, 6);
    const auto [p, pprime] = SampleLdpPair(eps0, num_bins, rng);
    identities = identities &&
                 MomentIdentitiesCheck(m, p, pprime, 8, eps0).AllOk();
  }
  suite.Check("multinomial moment identities and sub-Gaussian caps",
              identities);

  bool window_matches_full = true;
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t n = rng.UniformInt(10, 10000);
    const double p = rng.UniformIn(0.05, 0.95);
    const int order = rng.UniformInt(1, 8);
    const double windowed =
        BinomCentralMoment(MomentSpec{n, p, order});
    const double full =
        internal::BinomCentralMomentWindowed(n, p, order, 0).ToLinear();
    const double scale =
        std::max(1e-300, std::max(std::fabs(windowed), std::fabs(full)));
    window_matches_full = window_matches_full &&
                          (windowed == full ||
                           std::fabs(windowed - full) / scale <= 1e-9);
  }
  suite.Check("windowed and full central-moment sums agree", window_matches_full);

  bool odd_zero = true;
  for (std::int64_t n : {5, 10, 101, 1000}) {
    const double sigma = std::sqrt(n * 0.25);
    for (int order : {1, 3, 5, 7, 9}) {
      const double moment = BinomCentralMoment(MomentSpec{n, 0.5, order});
      odd_zero = odd_zero &&
                 std::fabs(moment) <= 1e-9 * std::pow(sigma, order);
    }
  }
  suite.Check("odd central moments of Bin(n, 1/2) vanish", odd_zero);
  return suite.Take();
}

SuiteReport MixtureSuite(std::uint64_t seed) {
  SuiteBuilder suite("mixture");
  SeededRng rng(seed);

  const DiscreteMechanism rr = BinaryRrMechanism(1.0);
  suite.Check("binary randomized response decomposes at n = 3",
              MixtureDecompositionCheck(rr, {0, 0, 0}, {0, 0, 1}, 1e-12));

  bool random_ok = true;
  for (int trial = 0; trial < 30; ++trial) {
    const double eps0 = 0.25 + 2.0 * rng.UniformUnit();
    const int num_bins = rng.UniformInt(2, 4);
    const int num_inputs = rng.UniformInt(2, 3);
    const int n = rng.UniformInt(2, 6);
    const DiscreteMechanism mech =
        SampleLdpMechanism(eps0, num_inputs, num_bins, rng);
    const auto [dataset, neighbor] = SampleNeighborDatasets(mech, n, rng);
    random_ok = random_ok &&
                MixtureDecompositionCheck(mech, dataset, neighbor, 1e-11);
  }
  suite.Check("random LDP mechanisms decompose entrywise", random_ok);
  return suite.Take();
}

SuiteReport MonotonicSuite(std::uint64_t seed) {
  SuiteBuilder suite("monotonic");
  SeededRng rng(seed);

  bool drop_ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    const double eps0 = 0.25 + 2.0 * rng.UniformUnit();
    const int num_bins = rng.UniformInt(2, 4);
    const int num_inputs = rng.UniformInt(2, 3);
    const int n = rng.UniformInt(2, 6);
    const DiscreteMechanism mech =
        SampleLdpMechanism(eps0, num_inputs, num_bins, rng);
    const auto [dataset, neighbor] = SampleNeighborDatasets(mech, n, rng);
    const double lambda = 2 + rng.UniformInt(0, 2);
    drop_ok = drop_ok && MonotonicityCheck(mech, dataset, neighbor, lambda);
  }
  suite.Check("dropping a non-differing client never lowers the expectation",
              drop_ok);

  bool em_ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const double eps0 = 0.25 + 2.0 * rng.UniformUnit();
    const int num_bins = rng.UniformInt(2, 4);
    const auto [p, pprime] = SampleLdpPair(eps0, num_bins, rng);
    const double lambda = 2 + rng.UniformInt(0, 2);
    double prev = kPosInf;
    for (int m = 1; m <= 6; ++m) {
      const double em =
          LogSpecialPairPowerExpectation(p, pprime, m + 1, lambda);
      em_ok = em_ok && em <= prev + 1e-12;
      prev = em;
    }
  }
  suite.Check("E_m is non-increasing in m", em_ok);

  bool reduction_ok = true;
  for (int trial = 0; trial < 30; ++trial) {
    const double eps0 = 0.25 + 2.0 * rng.UniformUnit();
    const int num_bins = rng.UniformInt(2, 4);
    const int num_inputs = rng.UniformInt(2, 3);
    const int n = rng.UniformInt(2, 6);
    const DiscreteMechanism mech =
        SampleLdpMechanism(eps0, num_inputs, num_bins, rng);
    const auto [dataset, neighbor] = SampleNeighborDatasets(mech, n, rng);
    const double lambda = 2 + rng.UniformInt(0, 2);
    reduction_ok =
        reduction_ok && ReductionCheck(mech, dataset, neighbor, lambda);
  }
  suite.Check("binomial mixture of special pairs dominates the full pair",
              reduction_ok);

  bool sup_ok = true;
  for (double eps0 : {0.1, 1.0, 3.0}) {
    const double cap = SupVarianceVertex(eps0);
    for (int trial = 0; trial < 500; ++trial) {
      const int num_bins = rng.UniformInt(2, 4);
      const auto [p, pprime] = SampleLdpPair(eps0, num_bins, rng);
      sup_ok = sup_ok && VarianceTerm(p, pprime) <= cap + 1e-12;
      // Every ratio-polytope vertex attains the supremum.
      const auto [vp, vpprime] = SampleVertexPair(eps0, num_bins, rng);
      sup_ok = sup_ok && std::fabs(VarianceTerm(vp, vpprime) - cap) <=
                             1e-10 * std::max(1.0, cap);
    }
    std::vector<double> p;
    std::vector<double> pprime;
    TwoBinVertex(eps0, p, pprime);
    sup_ok = sup_ok && std::fabs(VarianceTerm(p, pprime) - cap) <= 1e-12;
  }
  suite.Check("variance term capped by (e^eps0 - 1)^2 / e^eps0", sup_ok);
  return suite.Take();
}

}  // namespace

bool SuiteReport::AllPass() const {
  for (const PropertyResult& result : results) {
    if (!result.pass) return false;
  }
  return true;
}

const std::vector<std::string>& SuiteNames() {
  static const std::vector<std::string> kNames = {
      "gamma", "sandwich", "oracle", "moments", "mixture", "monotonic"};
  return kNames;
}

std::vector<SuiteReport> RunSuites(const std::string& name,
                                   std::uint64_t seed) {
  const auto run_one = [&](const std::string& suite) -> SuiteReport {
    if (suite == "gamma") return GammaSuite(seed);
    if (suite == "sandwich") return SandwichSuite(seed);
    if (suite == "oracle") return OracleSuite(seed);
    if (suite == "moments") return MomentsSuite(seed);
    if (suite == "mixture") return MixtureSuite(seed);
    if (suite == "monotonic") return MonotonicSuite(seed);
    throw PreconditionError("unknown verify suite: " + suite);
  };
  std::vector<SuiteReport> reports;
  if (name == "all") {
    for (const std::string& suite : SuiteNames()) {
      reports.push_back(run_one(suite));
    }
  } else {
    reports.push_back(run_one(name));
  }
  return reports;
}

}  // namespace shuffle_rdp
