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
// End-to-end acceptance checks.  Each test is one criterion; gtest
// prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "shuffle_rdp/accountant.h"
#include "shuffle_rdp/bounds.h"
#include "shuffle_rdp/numerics.h"
#include "shuffle_rdp/oracle.h"
#include "shuffle_rdp/random.h"

namespace shuffle_rdp {
namespace {

constexpr std::uint64_t kAcceptanceSeed = 20260810;

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

TEST(Acceptance, Criterion01LowerBoundEqualsExactTwoRr) {
  const Stopwatch timer;
  for (double eps0 : {0.1, 0.5, 1.0, 3.0}) {
    for (std::int64_t n : {10, 100, 1000, 10000}) {
      for (std::int64_t lambda = 2; lambda <= 32; ++lambda) {
        const double lb = LowerBound(ShuffleParams{eps0, n}, lambda);
        const double rr =
            Exact2RrRenyi(eps0, n, lambda, TwoRrDirection::kDprimeToD);
        EXPECT_LE(std::fabs(lb - rr), 1e-10 * std::max(1.0, std::fabs(rr)))
            << "eps0=" << eps0 << " n=" << n << " lambda=" << lambda;
      }
    }
  }
  EXPECT_LT(timer.Seconds(), 10.0);
}

TEST(Acceptance, Criterion02SandwichOnTheGrid) {
  const Stopwatch timer;
  for (double eps0 : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    for (std::int64_t n : {100, 1000, 10000, 1000000}) {
      for (std::int64_t lambda : {2, 4, 8, 16, 32, 64}) {
        const ShuffleParams params{eps0, n};
        const double lb = LowerBound(params, lambda);
        const double ub1 = UpperBound1(params, lambda);
        const double ub2 = UpperBound2(params, static_cast<double>(lambda));
        const double baseline =
            ErlingssonBaseline(params, static_cast<double>(lambda));
        if (!std::isfinite(lb) || !std::isfinite(ub1) || !std::isfinite(ub2) ||
            !std::isfinite(baseline)) {
          continue;
        }
        EXPECT_LE(lb, ub1 * (1 + 1e-12) + 1e-15)
            << "eps0=" << eps0 << " n=" << n << " lambda=" << lambda;
        // Known counterexample at (0.1, 100, 64): once lambda far exceeds
        // nbar, the moment-sum bound overtakes the exponential one, so
        // this ordering is not a theorem there.  Asserted as stated.
        EXPECT_LE(ub1, ub2 * (1 + 1e-12) + 1e-15)
            << "eps0=" << eps0 << " n=" << n << " lambda=" << lambda;
        EXPECT_LE(lb, baseline * (1 + 1e-12) + 1e-15)
            << "eps0=" << eps0 << " n=" << n << " lambda=" << lambda;
      }
    }
  }
  EXPECT_LT(timer.Seconds(), 5.0);
}

TEST(Acceptance, Criterion03OracleCertifiesTheUpperBounds) {
  const Stopwatch timer;
  SeededRng rng(kAcceptanceSeed);
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double eps0 = 0.2 + 2.3 * rng.UniformUnit();
    const int num_bins = rng.UniformInt(2, 4);
    const int num_inputs = rng.UniformInt(2, 4);
    const int n = rng.UniformInt(2, 8);
    const DiscreteMechanism mech =
        SampleLdpMechanism(eps0, num_inputs, num_bins, rng);
    const auto [dataset, neighbor] = SampleNeighborDatasets(mech, n, rng);
    const HistogramDistribution dist = ShuffleDistribution(mech, dataset);
    const HistogramDistribution dist_neighbor =
        ShuffleDistribution(mech, neighbor);
    const ShuffleParams params{eps0, n};
    for (std::int64_t lambda : {2, 3, 4}) {
      const double ub1 = UpperBound1(params, lambda);
      const double ub2 = UpperBound2(params, static_cast<double>(lambda));
      const double worst = std::max(
          RenyiDivergence(dist, dist_neighbor, static_cast<double>(lambda)),
          RenyiDivergence(dist_neighbor, dist, static_cast<double>(lambda)));
      if (worst > ub1 * (1 + 1e-10) + 1e-12 ||
          worst > ub2 * (1 + 1e-10) + 1e-12) {
        ++violations;
      }
    }
  }
  EXPECT_EQ(violations, 0);
  EXPECT_LT(timer.Seconds(), 30.0);
}

TEST(Acceptance, Criterion04StructuralLemmasAtDeskScale) {
  SeededRng rng(kAcceptanceSeed + 1);
  // Mixture decomposition, entrywise below 1e-11 at n <= 6.
  for (int trial = 0; trial < 40; ++trial) {
    const double eps0 = 0.25 + 2.0 * rng.UniformUnit();
    const DiscreteMechanism mech =
        SampleLdpMechanism(eps0, rng.UniformInt(2, 3), rng.UniformInt(2, 4),
                           rng);
    const auto [dataset, neighbor] =
        SampleNeighborDatasets(mech, 2 + rng.UniformInt(0, 4), rng);
    EXPECT_TRUE(MixtureDecompositionCheck(mech, dataset, neighbor, 1e-11));
  }
  // Dropping a non-differing client, on 100 seeded instances.
  for (int trial = 0; trial < 100; ++trial) {
    const double eps0 = 0.25 + 2.0 * rng.UniformUnit();
    const DiscreteMechanism mech =
        SampleLdpMechanism(eps0, rng.UniformInt(2, 3), rng.UniformInt(2, 4),
                           rng);
    const auto [dataset, neighbor] =
        SampleNeighborDatasets(mech, 2 + rng.UniformInt(0, 5), rng);
    EXPECT_TRUE(MonotonicityCheck(mech, dataset, neighbor,
                                  2.0 + rng.UniformInt(0, 2)));
  }
  // E_m non-increasing for m in [1, 6].
  for (int trial = 0; trial < 25; ++trial) {
    const double eps0 = 0.25 + 2.0 * rng.UniformUnit();
    const auto [p, pprime] = SampleLdpPair(eps0, rng.UniformInt(2, 4), rng);
    const double lambda = 2.0 + rng.UniformInt(0, 2);
    double prev = kPosInf;
    for (int m = 1; m <= 6; ++m) {
      const double em = LogSpecialPairPowerExpectation(p, pprime, m + 1,
                                                       lambda);
      EXPECT_LE(em, prev + 1e-12);
      prev = em;
    }
  }
  // Reduction to the special case, enumerated exactly at n <= 6.
  for (int trial = 0; trial < 50; ++trial) {
    const double eps0 = 0.25 + 2.0 * rng.UniformUnit();
    const DiscreteMechanism mech =
        SampleLdpMechanism(eps0, rng.UniformInt(2, 3), rng.UniformInt(2, 4),
                           rng);
    const auto [dataset, neighbor] =
        SampleNeighborDatasets(mech, 2 + rng.UniformInt(0, 4), rng);
    EXPECT_TRUE(ReductionCheck(mech, dataset, neighbor,
                               2.0 + rng.UniformInt(0, 2)));
  }
}

TEST(Acceptance, Criterion05MomentIdentities) {
  SeededRng rng(kAcceptanceSeed + 2);
  for (int trial = 0; trial < 100; ++trial) {
    const double eps0 = 0.25 + 2.25 * rng.UniformUnit();
    const int m = rng.UniformInt(1, 6);
    const auto [p, pprime] = SampleLdpPair(eps0, rng.UniformInt(2, 4), rng);
    const MomentReport report =
        MomentIdentitiesCheck(m, p, pprime, 8, eps0);
    EXPECT_TRUE(report.mean_ok) << "trial " << trial;
    EXPECT_TRUE(report.variance_ok) << "trial " << trial;
    EXPECT_TRUE(report.caps_ok) << "trial " << trial;
  }
}

TEST(Acceptance, Criterion06SupremumLemma) {
  SeededRng rng(kAcceptanceSeed + 3);
  for (double eps0 : {0.1, 1.0, 3.0}) {
    const double cap = SupVarianceVertex(eps0);
    for (int trial = 0; trial < 10000; ++trial) {
      const auto [p, pprime] = SampleLdpPair(eps0, rng.UniformInt(2, 4), rng);
      ASSERT_LE(VarianceTerm(p, pprime), cap + 1e-12);
    }
    // All two-bin vertices: the extremal pattern embedded in every
    // ordered bin pair, for each tested width.
    for (int num_bins : {2, 3, 4}) {
      std::vector<double> base_p;
      std::vector<double> base_pprime;
      TwoBinVertex(eps0, base_p, base_pprime);
      for (int a = 0; a < num_bins; ++a) {
        for (int b = 0; b < num_bins; ++b) {
          if (a == b) continue;
          std::vector<double> p(num_bins, 0.0);
          std::vector<double> pprime(num_bins, 0.0);
          p[a] = base_p[0];
          p[b] = base_p[1];
          pprime[a] = base_pprime[0];
          pprime[b] = base_pprime[1];
          EXPECT_NEAR(VarianceTerm(p, pprime), cap, 1e-12 * std::max(1.0, cap));
        }
      }
    }
  }
}

TEST(Acceptance, Criterion07GammaFunctionInequality) {
  for (int lambda = 3; lambda <= 128; ++lambda) {
    for (int k = 3; k <= lambda; ++k) {
      ASSERT_TRUE(GammaInequalityHolds(lambda, k))
          << "lambda=" << lambda << " k=" << k;
    }
  }
}

TEST(Acceptance, Criterion08SimplifiedBoundEnvelope) {
  for (double eps0 : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    for (std::int64_t n : {100, 1000, 10000, 1000000}) {
      for (std::int64_t lambda : {2, 4, 8, 16, 32, 64}) {
        if (!(4 * std::log(static_cast<double>(lambda)) + 5 * eps0 <
              std::log(static_cast<double>(n) / 9.0))) {
          continue;
        }
        const ShuffleParams params{eps0, n};
        EXPECT_LE(UpperBound1(params, lambda),
                  UpperBound1Simplified(params, lambda) * (1 + 1e-12) + 1e-15)
            << "eps0=" << eps0 << " n=" << n << " lambda=" << lambda;
      }
    }
  }
}

TEST(Acceptance, Criterion09SaturationNearTheLocalParameter) {
  for (double eps0 : {1.0, 2.0, 3.0}) {
    const ShuffleParams params{eps0, 10000};
    const double best = BestUpper(params, 10000.0);
    EXPECT_GE(best, 0.5 * eps0) << "eps0=" << eps0;
    EXPECT_LE(best, eps0 + 1e-12) << "eps0=" << eps0;
    EXPECT_GE(LowerBound(params, 10000), 0.3 * eps0) << "eps0=" << eps0;
  }
}

TEST(Acceptance, Criterion10ConversionAndCompositionRegressions) {
  const ShuffleParams params{0.5, 1000000};
  const std::vector<RdpOrder> grid = DefaultLambdaGrid();
  // Golden values pinned from the first correct build.
  const struct {
    std::int64_t rounds;
    double eps;
    double argmin;
  } golden[] = {
      {1, 0.0070038017769290294, 1024.0},
      {1000, 0.13360893745096225, 116.0},
      {100000, 1.3684199187656929, 17.0},
  };
  double prev = 0.0;
  for (const auto& want : golden) {
    const ComposedGuarantee got =
        ComposeAndConvert(params, want.rounds, 1e-6, grid);
    EXPECT_NEAR(got.dp.epsilon, want.eps, 1e-9 * want.eps)
        << "T=" << want.rounds;
    EXPECT_EQ(got.order.value, want.argmin) << "T=" << want.rounds;
    EXPECT_GE(got.dp.epsilon, prev);
    prev = got.dp.epsilon;
  }
  // Composition stays far below the naive linear budget T * eps0.
  EXPECT_LT(prev, 100000 * 0.5);
  // Single-bound regression at the same operating point.
  EXPECT_NEAR(UpperBound1(params, 16), 6.9724751649946003e-06, 1e-15);
}

}  // namespace
}  // namespace shuffle_rdp
