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

#include "shuffle_rdp/bounds.h"

#include <cmath>

#include "gtest/gtest.h"
#include "shuffle_rdp/numerics.h"

namespace shuffle_rdp {
namespace {

double Choose(int n, int k) {
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result *= static_cast<double>(n - k + i) / i;
  }
  return result;
}

// Independent oracle: the first upper bound evaluated naively in linear
// domain.  Valid for parameters small enough that nothing overflows.
double DirectUpperBound1(double eps0, std::int64_t n, int lambda) {
  const double e = std::exp(eps0);
  const double nbar = std::floor((n - 1) / (2.0 * e)) + 1;
  double sum = 1.0 + Choose(lambda, 2) * (e - 1) * (e - 1) / (nbar * e);
  for (int i = 3; i <= lambda; ++i) {
    const double base = std::pow(e * e - 1, 2) / (2.0 * e * e * nbar);
    sum += Choose(lambda, i) * i * std::tgamma(i / 2.0) *
           std::pow(base, i / 2.0);
  }
  sum += std::exp(eps0 * lambda - (n - 1) / (8.0 * e));
  return std::log(sum) / (lambda - 1);
}

double DirectUpperBound2(double eps0, std::int64_t n, double lambda) {
  const double e = std::exp(eps0);
  const double nbar = std::floor((n - 1) / (2.0 * e)) + 1;
  const double sum = std::exp(lambda * lambda * (e - 1) * (e - 1) / nbar) +
                     std::exp(eps0 * lambda - (n - 1) / (8.0 * e));
  return std::log(sum) / (lambda - 1);
}

// Full-range binomial pmf recurrence, as in the numerics oracle.
double BruteForceCentralMoment(int n, double p, int order) {
  const double mean = n * p;
  double pmf = std::pow(1.0 - p, n);
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    acc += pmf * std::pow(k - mean, order);
    pmf *= static_cast<double>(n - k) / (k + 1) * (p / (1.0 - p));
  }
  return acc;
}

double DirectLowerBound(double eps0, int n, int lambda) {
  const double e = std::exp(eps0);
  const double p = 1.0 / (e + 1.0);
  double sum = 1.0 + Choose(lambda, 2) * (e - 1) * (e - 1) / (n * e);
  for (int i = 3; i <= lambda; ++i) {
    sum += Choose(lambda, i) * std::pow((e * e - 1) / (n * e), i) *
           BruteForceCentralMoment(n, p, i);
  }
  return std::log(sum) / (lambda - 1);
}

TEST(ShuffleParams, DerivedConstants) {
  const ShuffleParams params{1.0, 101};
  EXPECT_NEAR(params.Q(), std::exp(-1.0), 1e-15);
  EXPECT_EQ(params.NBar(),
            static_cast<std::int64_t>(std::floor(100 / (2 * std::exp(1.0)))) + 1);
  EXPECT_THROW((ShuffleParams{-0.1, 10}.Validate()), PreconditionError);
  EXPECT_THROW((ShuffleParams{1.0, 0}.Validate()), PreconditionError);
  EXPECT_THROW((ShuffleParams{1.0, 10, 1.5}.Validate()), PreconditionError);
}

TEST(UpperBound1, ChernoffTermOnlySurvivesAtEpsZero) {
  const ShuffleParams params{0.0, 100};
  const double expected = std::log1p(std::exp(-99.0 / 8.0));
  EXPECT_NEAR(UpperBound1(params, 2), expected, 1e-15);
  EXPECT_NEAR(UpperBound1(params, 2), 4.217e-6, 1e-8);
  for (std::int64_t lambda : {2, 8, 64}) {
    for (std::int64_t n : {50, 1000}) {
      const ShuffleParams p0{0.0, n};
      EXPECT_NEAR(UpperBound1(p0, lambda),
                  std::log1p(std::exp(-(n - 1) / 8.0)) / (lambda - 1), 1e-15);
    }
  }
}

TEST(UpperBound1, MatchesDirectEvaluation) {
  for (double eps0 : {0.1, 0.5, 1.0, 2.0}) {
    for (std::int64_t n : {100, 10000}) {
      for (int lambda : {2, 3, 4, 8, 16}) {
        const double direct = DirectUpperBound1(eps0, n, lambda);
        const double actual = UpperBound1(ShuffleParams{eps0, n}, lambda);
        EXPECT_NEAR(actual, direct, 1e-10 * std::max(1.0, std::fabs(direct)))
            << "eps0=" << eps0 << " n=" << n << " lambda=" << lambda;
      }
    }
  }
}

TEST(UpperBound1, SurvivesExtremeOrdersWithoutOverflow) {
  const double value = UpperBound1(ShuffleParams{3.0, 10000}, 10000);
  EXPECT_TRUE(std::isfinite(value));
  EXPECT_GT(value, 0.0);
}

TEST(UpperBound1, GeneralizedChernoffSlack) {
  // gamma != 0.5 moves both the effective client count and the
  // Chernoff exponent.
  const double eps0 = 0.5;
  const std::int64_t n = 10000;
  const double gamma = 0.25;
  const ShuffleParams params{eps0, n, gamma};
  const double e = std::exp(eps0);
  EXPECT_EQ(params.NBar(),
            static_cast<std::int64_t>(std::floor((1 - gamma) * (n - 1) / e)) +
                1);
  EXPECT_NEAR(params.ChernoffLogTerm(4.0),
              eps0 * 4 - gamma * gamma * (n - 1) / (2 * e), 1e-12);

  const double nbar = std::floor((1 - gamma) * (n - 1) / e) + 1;
  const int lambda = 4;
  double sum = 1.0 + Choose(lambda, 2) * (e - 1) * (e - 1) / (nbar * e);
  for (int i = 3; i <= lambda; ++i) {
    const double base = std::pow(e * e - 1, 2) / (2.0 * e * e * nbar);
    sum += Choose(lambda, i) * i * std::tgamma(i / 2.0) *
           std::pow(base, i / 2.0);
  }
  sum += std::exp(eps0 * lambda - gamma * gamma * (n - 1) / (2 * e));
  EXPECT_NEAR(UpperBound1(params, lambda), std::log(sum) / (lambda - 1),
              1e-12);
  // A smaller slack keeps more clients, so the polynomial part shrinks.
  EXPECT_GT(params.NBar(), (ShuffleParams{eps0, n}).NBar());
}

TEST(UpperBound1, RejectsBadOrders) {
  const ShuffleParams params{0.5, 1000};
  EXPECT_THROW(UpperBound1(params, 1), PreconditionError);
  EXPECT_THROW(UpperBound1(ShuffleParams{0.5, 1}, 2), PreconditionError);
}

TEST(UpperBound1Simplified, ZeroAtEpsZero) {
  EXPECT_DOUBLE_EQ(UpperBound1Simplified(ShuffleParams{0.0, 1000}, 2), 0.0);
}

TEST(UpperBound1Simplified, MatchesDirectEvaluation) {
  // (1/3) log(1 + 24 (e^{0.1}-1)^2 / 1e6)
  const double em = std::expm1(0.1);
  const double expected = std::log1p(24.0 * em * em / 1e6) / 3.0;
  const double actual = UpperBound1Simplified(ShuffleParams{0.1, 1000000}, 4);
  EXPECT_NEAR(actual, expected, 1e-14);
  EXPECT_NEAR(actual, 8.8487e-8, 1e-11);
}

TEST(UpperBound1Simplified, GuardViolationNamesTheInequality) {
  try {
    UpperBound1Simplified(ShuffleParams{3.0, 100}, 10);
    FAIL() << "expected a PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("lambda^4"), std::string::npos);
  }
}

TEST(UpperBound1Simplified, DominatesUpperBound1UnderTheGuard) {
  for (double eps0 : {0.0, 0.05, 0.1, 0.3}) {
    for (std::int64_t n : {100000, 1000000}) {
      for (int lambda : {2, 3, 5, 10}) {
        if (!(4 * std::log(static_cast<double>(lambda)) + 5 * eps0 <
              std::log(n / 9.0))) {
          continue;
        }
        const ShuffleParams params{eps0, n};
        EXPECT_LE(UpperBound1(params, lambda),
                  UpperBound1Simplified(params, lambda) * (1 + 1e-12) + 1e-15);
      }
    }
  }
}

TEST(UpperBound2, MatchesDirectEvaluation) {
  for (double eps0 : {0.0, 0.1, 0.5, 1.0}) {
    for (std::int64_t n : {100, 100000}) {
      for (double lambda : {2.0, 2.5, 7.0, 100.0}) {
        const double direct = DirectUpperBound2(eps0, n, lambda);
        const double actual = UpperBound2(ShuffleParams{eps0, n}, lambda);
        EXPECT_NEAR(actual, direct, 1e-10 * std::max(1.0, std::fabs(direct)));
      }
    }
  }
}

TEST(UpperBound2, AcceptsRealOrdersAndDominatesUpperBound1) {
  const ShuffleParams params{0.1, 10000};
  EXPECT_TRUE(std::isfinite(UpperBound2(ShuffleParams{0.5, 100000}, 2.5)));
  EXPECT_GE(UpperBound2(params, 100.0), UpperBound1(params, 100));
  EXPECT_THROW(UpperBound2(params, 1.0), PreconditionError);
}

TEST(LowerBound, ZeroAtEpsZero) {
  EXPECT_DOUBLE_EQ(LowerBound(ShuffleParams{0.0, 1000}, 7), 0.0);
}

TEST(LowerBound, ClosedFormAtOrderTwo) {
  const double e = std::exp(1.0);
  const double expected = std::log1p((e - 1) * (e - 1) / (10 * e));
  EXPECT_NEAR(LowerBound(ShuffleParams{1.0, 10}, 2), expected, 1e-13);
}

TEST(LowerBound, MatchesBruteForceMomentExpansion) {
  for (double eps0 : {0.1, 0.5, 1.0, 2.0}) {
    for (int n : {10, 100, 500}) {
      for (int lambda : {2, 3, 4, 6, 8}) {
        const double direct = DirectLowerBound(eps0, n, lambda);
        const double actual = LowerBound(ShuffleParams{eps0, n}, lambda);
        EXPECT_NEAR(actual, direct, 1e-9 * std::max(1.0, std::fabs(direct)))
            << "eps0=" << eps0 << " n=" << n << " lambda=" << lambda;
      }
    }
  }
}

TEST(LowerBound, SimplifiedFormIsExactAtOrderTwoAndBelowElsewhere) {
  for (double eps0 : {0.1, 1.0, 3.0}) {
    for (std::int64_t n : {10, 1000, 100000}) {
      const ShuffleParams params{eps0, n};
      EXPECT_EQ(LowerBound(params, 2), LowerBoundSimplified(params, 2));
      for (std::int64_t lambda : {3, 5, 9, 17}) {
        EXPECT_LE(LowerBoundSimplified(params, lambda),
                  LowerBound(params, lambda) * (1 + 1e-12) + 1e-15);
      }
    }
  }
}

TEST(ErlingssonBaseline, ScalarEvaluation) {
  EXPECT_DOUBLE_EQ(ErlingssonBaseline(ShuffleParams{0.0, 100}, 3.0), 0.0);
  const double e = std::exp(1.0);
  const double expected = 100.0 * 2.0 * std::exp(4.0) * (e - 1) * (e - 1) / 1e4;
  EXPECT_NEAR(ErlingssonBaseline(ShuffleParams{1.0, 10000}, 100.0), expected,
              1e-12 * expected);
  EXPECT_NEAR(expected, 3.224, 2e-3);
}

TEST(ErlingssonBaseline, ExceedsTheSimplifiedBoundByTheQuarticFactor) {
  // In the linearized regime the baseline sits a factor e^{4 eps0}
  // above the simplified bound.
  const double eps0 = 0.1;
  const ShuffleParams params{eps0, 1000000};
  const double ratio = ErlingssonBaseline(params, 4.0) /
                       UpperBound1Simplified(params, 4);
  EXPECT_NEAR(ratio, std::exp(4 * eps0), 1e-4 * std::exp(4 * eps0));
}

TEST(BoundOrdering, TightRegimeKeepsTheExpectedCurveOrder) {
  // eps0 = 3, n = 1e4, lambda = 100: the first bound sits between the
  // lower bound and the conversion baseline.
  const ShuffleParams params{3.0, 10000};
  const double lb = LowerBound(params, 100);
  const double ub1 = UpperBound1(params, 100);
  const double baseline = ErlingssonBaseline(params, 100.0);
  EXPECT_LT(lb, ub1);
  EXPECT_LT(ub1, baseline);

  const ShuffleParams mild{0.5, 1000000};
  EXPECT_LT(UpperBound1(mild, 16), ErlingssonBaseline(mild, 16.0));
}

TEST(RdpRealOrder, IntegerOrdersPassThrough) {
  const ShuffleParams params{0.5, 100000};
  EXPECT_EQ(RdpRealOrder(params, 3.0, UpperBoundKind::kUb1),
            UpperBound1(params, 3));
}

TEST(RdpRealOrder, InterpolatesScaledEpsilon) {
  const ShuffleParams params{0.5, 100000};
  const double e3 = UpperBound1(params, 3);
  const double e4 = UpperBound1(params, 4);
  const double expected = (0.5 * 2 * e3 + 0.5 * 3 * e4) / 2.5;
  EXPECT_NEAR(RdpRealOrder(params, 3.5, UpperBoundKind::kUb1), expected, 1e-14);
}

TEST(RdpRealOrder, ContinuousAtIntegerOrders) {
  const ShuffleParams params{0.5, 100000};
  const double near = RdpRealOrder(params, 4.0 - 1e-9, UpperBoundKind::kUb1);
  EXPECT_NEAR(near, UpperBound1(params, 4), 1e-6);
}

TEST(RdpRealOrder, BelowTwoFallsBackToOrderTwo) {
  const ShuffleParams params{0.5, 100000};
  EXPECT_EQ(RdpRealOrder(params, 1.25, UpperBoundKind::kUb1),
            UpperBound1(params, 2));
}

TEST(BestUpper, NeverAboveAnyCandidate) {
  for (double eps0 : {0.1, 1.0, 3.0}) {
    for (std::int64_t n : {100, 10000}) {
      for (double lambda : {2.0, 3.5, 64.0}) {
        const ShuffleParams params{eps0, n};
        const double best = BestUpper(params, lambda);
        EXPECT_LE(best, eps0 + 1e-15);
        EXPECT_LE(best, UpperBound2(params, lambda) + 1e-15);
      }
    }
  }
}

TEST(BestUpper, SaturatesAtTheLocalParameterForHugeOrders) {
  for (double eps0 : {1.0, 2.0, 3.0}) {
    const ShuffleParams params{eps0, 10000};
    const double best = BestUpper(params, 10000.0);
    EXPECT_LE(best, eps0 + 1e-15);
    EXPECT_GE(best, 0.5 * eps0);
  }
}

TEST(BestUpper, FirstBoundDominatesInTheTightRegime) {
  const ShuffleParams params{0.1, 10000};
  EXPECT_EQ(BestUpper(params, 100.0), UpperBound1(params, 100));
}

TEST(BestUpperCurve, KeepsFiniteEntriesAndStaysSorted) {
  const ShuffleParams params{0.5, 1000};
  std::vector<RdpOrder> orders;
  for (std::int64_t lambda = 2; lambda <= 32; ++lambda) {
    orders.push_back(RdpOrder::Integer(lambda));
  }
  const RdpCurve curve = BestUpperCurve(params, orders);
  EXPECT_EQ(curve.points.size(), orders.size());
  curve.Validate();
}

TEST(BoundMethod, ParseAndDispatch) {
  EXPECT_EQ(*ParseBoundMethod("ub1"), BoundMethod::kUb1);
  EXPECT_EQ(*ParseBoundMethod("lb_simple"), BoundMethod::kLowerBoundSimplified);
  EXPECT_FALSE(ParseBoundMethod("nope").has_value());
  const ShuffleParams params{0.5, 1000};
  EXPECT_EQ(EvaluateBound(params, BoundMethod::kUb1, 4.0),
            UpperBound1(params, 4));
  EXPECT_THROW(EvaluateBound(params, BoundMethod::kUb1, 2.5),
               PreconditionError);
  EXPECT_THROW(EvaluateBound(params, BoundMethod::kLowerBound, 2.5),
               PreconditionError);
}

TEST(RdpCurveScaling, ScaledEpsilonIsMonotoneAlongMethodCurves) {
  for (double eps0 : {0.1, 1.0}) {
    for (std::int64_t n : {1000, 100000}) {
      const ShuffleParams params{eps0, n};
      double prev_ub1 = 0.0;
      double prev_lb = 0.0;
      for (std::int64_t lambda = 2; lambda <= 40; ++lambda) {
        const double ub1 = (lambda - 1) * UpperBound1(params, lambda);
        const double lb = (lambda - 1) * LowerBound(params, lambda);
        EXPECT_GE(ub1, prev_ub1 - 1e-12);
        EXPECT_GE(lb, prev_lb - 1e-12);
        prev_ub1 = ub1;
        prev_lb = lb;
      }
    }
  }
}

}  // namespace
}  // namespace shuffle_rdp
