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

#include <algorithm>
#include <cmath>
#include <vector>

#include "shuffle_rdp/numerics.h"

namespace shuffle_rdp {
namespace {

bool IsIntegerOrder(double lambda) { return lambda == std::floor(lambda); }

void RequireIntegerOrder(double lambda, const char* op) {
  if (!IsIntegerOrder(lambda) || lambda < 2) {
    throw PreconditionError(std::string(op) +
                            " requires an integer order lambda >= 2; use "
                            "RdpRealOrder/BestUpper for real orders");
  }
}

// ln of the quadratic term C(lambda,2)(e^{eps0}-1)^2 / (m e^{eps0}), the
// leading moment contribution shared by several bounds.
double LogQuadraticTerm(std::int64_t lambda, double eps0, double m) {
  return LnBinomial(lambda, 2).log() + 2 * LnExpm1(eps0) - eps0 - std::log(m);
}

}  // namespace

void ShuffleParams::Validate() const {
  if (!(eps0 >= 0)) throw PreconditionError("eps0 must be >= 0");
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (!(gamma > 0) || !(gamma < 1)) {
    throw PreconditionError("gamma must lie in (0, 1)");
  }
}

double ShuffleParams::Q() const { return std::exp(-eps0); }

std::int64_t ShuffleParams::NBar() const {
  const double scaled = (1.0 - gamma) * static_cast<double>(n - 1) / std::exp(eps0);
  return static_cast<std::int64_t>(std::floor(scaled)) + 1;
}

double ShuffleParams::ChernoffLogTerm(double lambda) const {
  return eps0 * lambda -
         gamma * gamma * static_cast<double>(n - 1) / (2.0 * std::exp(eps0));
}

RdpOrder RdpOrder::Of(double value) {
  if (!(value > 1)) throw PreconditionError("Renyi order must be > 1");
  return RdpOrder{value, value == std::floor(value)};
}

RdpOrder RdpOrder::Integer(std::int64_t value) {
  if (value < 2) throw PreconditionError("integer Renyi order must be >= 2");
  return RdpOrder{static_cast<double>(value), true};
}

void RdpCurve::Validate() const {
  double prev = 1.0;
  for (const RdpPoint& pt : points) {
    if (!(pt.order.value > prev)) {
      throw PreconditionError("curve orders must be strictly increasing");
    }
    if (!std::isfinite(pt.epsilon) || pt.epsilon < 0) {
      throw PreconditionError("curve epsilons must be finite and >= 0");
    }
    prev = pt.order.value;
  }
}

bool RdpCurve::SameGrid(const RdpCurve& other) const {
  if (points.size() != other.points.size()) return false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].order.value != other.points[i].order.value) return false;
  }
  return true;
}

double UpperBound1(const ShuffleParams& params, std::int64_t lambda) {
  params.Validate();
  if (lambda < 2) {
    throw PreconditionError(
        "UpperBound1 requires an integer order lambda >= 2; use "
        "RdpRealOrder/BestUpper for real orders");
  }
  if (params.n < 2) throw PreconditionError("UpperBound1 requires n >= 2");
  const std::int64_t nbar = params.NBar();
  if (nbar < 1) return kPosInf;

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(lambda) + 2);
  terms.push_back(0.0);
  if (params.eps0 > 0) {
    terms.push_back(LogQuadraticTerm(lambda, params.eps0,
                                     static_cast<double>(nbar)));
    // ln of (e^{2 eps0} - 1)^2 / (2 e^{2 eps0} nbar), the base raised to i/2.
    const double log_base = 2 * LnExpm1(2 * params.eps0) - std::log(2.0) -
                            2 * params.eps0 -
                            std::log(static_cast<double>(nbar));
    for (std::int64_t i = 3; i <= lambda; ++i) {
      terms.push_back(LnBinomial(lambda, i).log() +
                      std::log(static_cast<double>(i)) + LnGamma(i / 2.0) +
                      (i / 2.0) * log_base);
    }
  }
  terms.push_back(params.ChernoffLogTerm(static_cast<double>(lambda)));
  return LogSumExp(terms) / static_cast<double>(lambda - 1);
}

double UpperBound1Simplified(const ShuffleParams& params, std::int64_t lambda) {
  params.Validate();
  if (lambda < 2) {
    throw PreconditionError("UpperBound1Simplified requires lambda >= 2");
  }
  const double ll = static_cast<double>(lambda);
  if (!(4 * std::log(ll) + 5 * params.eps0 <
        std::log(static_cast<double>(params.n) / 9.0))) {
    throw PreconditionError(
        "UpperBound1Simplified requires lambda^4 * exp(5*eps0) < n/9");
  }
  const double em = std::expm1(params.eps0);
  const double x = 0.5 * ll * (ll - 1) * 4.0 * em * em /
                   static_cast<double>(params.n);
  return std::log1p(x) / (ll - 1);
}

double UpperBound2(const ShuffleParams& params, double lambda) {
  params.Validate();
  if (!(lambda > 1)) throw PreconditionError("UpperBound2 requires lambda > 1");
  const std::int64_t nbar = params.NBar();
  if (nbar < 1) return kPosInf;
  const double em = std::expm1(params.eps0);
  const double terms[2] = {
      lambda * lambda * em * em / static_cast<double>(nbar),
      params.ChernoffLogTerm(lambda)};
  return LogSumExp(terms) / (lambda - 1);
}

double LowerBound(const ShuffleParams& params, std::int64_t lambda) {
  params.Validate();
  RequireIntegerOrder(static_cast<double>(lambda), "LowerBound");
  if (params.eps0 == 0) return 0.0;

  std::vector<double> pos;
  std::vector<double> neg;
  pos.push_back(0.0);
  pos.push_back(LogQuadraticTerm(lambda, params.eps0,
                                 static_cast<double>(params.n)));
  if (lambda >= 3) {
    const double p = 1.0 / (std::exp(params.eps0) + 1.0);
    const double log_ratio_scale = LnExpm1(2 * params.eps0) -
                                   std::log(static_cast<double>(params.n)) -
                                   params.eps0;
    const std::vector<SignedLog> moments =
        BinomCentralMomentsUpTo(params.n, p, static_cast<int>(lambda));
    for (std::int64_t i = 3; i <= lambda; ++i) {
      const SignedLog& mom = moments[static_cast<std::size_t>(i)];
      if (mom.sign == 0) continue;
      const double term = LnBinomial(lambda, i).log() +
                          static_cast<double>(i) * log_ratio_scale +
                          mom.log_abs;
      (mom.sign > 0 ? pos : neg).push_back(term);
    }
  }
  const double lp = LogSumExp(pos);
  const double ln = neg.empty() ? kNegInf : LogSumExp(neg);
  if (ln >= lp) return 0.0;
  const double log_total =
      ln == kNegInf ? lp : lp + std::log1p(-std::exp(ln - lp));
  return std::max(0.0, log_total / static_cast<double>(lambda - 1));
}

double LowerBoundSimplified(const ShuffleParams& params, std::int64_t lambda) {
  params.Validate();
  RequireIntegerOrder(static_cast<double>(lambda), "LowerBoundSimplified");
  if (params.eps0 == 0) return 0.0;
  const double terms[2] = {
      0.0,
      LogQuadraticTerm(lambda, params.eps0, static_cast<double>(params.n))};
  return LogSumExp(terms) / static_cast<double>(lambda - 1);
}

double ErlingssonBaseline(const ShuffleParams& params, double lambda) {
  params.Validate();
  if (!(lambda > 1)) {
    throw PreconditionError("ErlingssonBaseline requires lambda > 1");
  }
  const double em = std::expm1(params.eps0);
  return lambda * 2.0 * std::exp(4 * params.eps0) * em * em /
         static_cast<double>(params.n);
}

double RdpRealOrder(const ShuffleParams& params, double lambda,
                    UpperBoundKind kind) {
  params.Validate();
  if (!(lambda > 1)) throw PreconditionError("RdpRealOrder requires lambda > 1");
  const auto base = [&](std::int64_t order) {
    return kind == UpperBoundKind::kUb1 ? UpperBound1(params, order)
                                        : BestUpper(params,
                                                    static_cast<double>(order));
  };
  if (IsIntegerOrder(lambda) && lambda >= 2) {
    return base(static_cast<std::int64_t>(lambda));
  }
  // Below order 2 the interpolation anchor at floor(lambda) = 1 is not
  // available; the order-2 value is a conservative stand-in.
  if (lambda < 2) return base(2);
  const std::int64_t lo = static_cast<std::int64_t>(std::floor(lambda));
  const std::int64_t hi = lo + 1;
  const double a = static_cast<double>(hi) - lambda;
  return (a * static_cast<double>(lo - 1) * base(lo) +
          (1 - a) * static_cast<double>(hi - 1) * base(hi)) /
         (lambda - 1);
}

double BestUpper(const ShuffleParams& params, double lambda) {
  params.Validate();
  if (!(lambda > 1)) throw PreconditionError("BestUpper requires lambda > 1");
  // Shuffling post-processes one client's eps0-DP randomization, so the
  // Renyi parameter never exceeds eps0 at any order.
  double best = params.eps0;
  best = std::min(best, UpperBound2(params, lambda));
  if (params.n >= 2) {
    if (IsIntegerOrder(lambda) && lambda >= 2) {
      best = std::min(best,
                      UpperBound1(params, static_cast<std::int64_t>(lambda)));
    } else {
      best = std::min(best, RdpRealOrder(params, lambda, UpperBoundKind::kUb1));
    }
  }
  return best;
}

RdpCurve BestUpperCurve(const ShuffleParams& params,
                        const std::vector<RdpOrder>& orders) {
  RdpCurve curve;
  curve.points.reserve(orders.size());
  for (const RdpOrder& order : orders) {
    const double eps = BestUpper(params, order.value);
    if (!std::isfinite(eps)) continue;  // sentinel: entry omitted
    curve.points.push_back(RdpPoint{order, eps});
  }
  curve.Validate();
  return curve;
}

std::optional<BoundMethod> ParseBoundMethod(std::string_view name) {
  if (name == "ub1") return BoundMethod::kUb1;
  if (name == "ub1_simplified") return BoundMethod::kUb1Simplified;
  if (name == "ub2") return BoundMethod::kUb2;
  if (name == "lb") return BoundMethod::kLowerBound;
  if (name == "lb_simple") return BoundMethod::kLowerBoundSimplified;
  if (name == "erlingsson") return BoundMethod::kErlingsson;
  if (name == "best") return BoundMethod::kBest;
  return std::nullopt;
}

std::string BoundMethodName(BoundMethod method) {
  switch (method) {
    case BoundMethod::kUb1:
      return "ub1";
    case BoundMethod::kUb1Simplified:
      return "ub1_simplified";
    case BoundMethod::kUb2:
      return "ub2";
    case BoundMethod::kLowerBound:
      return "lb";
    case BoundMethod::kLowerBoundSimplified:
      return "lb_simple";
    case BoundMethod::kErlingsson:
      return "erlingsson";
    case BoundMethod::kBest:
      return "best";
  }
  return "unknown";
}

const std::vector<BoundMethod>& AllBoundMethods() {
  static const std::vector<BoundMethod> kAll = {
      BoundMethod::kUb1,        BoundMethod::kUb1Simplified,
      BoundMethod::kUb2,        BoundMethod::kLowerBound,
      BoundMethod::kLowerBoundSimplified,
      BoundMethod::kErlingsson, BoundMethod::kBest};
  return kAll;
}

double EvaluateBound(const ShuffleParams& params, BoundMethod method,
                     double lambda) {
  switch (method) {
    case BoundMethod::kUb1:
      RequireIntegerOrder(lambda, "ub1");
      return UpperBound1(params, static_cast<std::int64_t>(lambda));
    case BoundMethod::kUb1Simplified:
      RequireIntegerOrder(lambda, "ub1_simplified");
      return UpperBound1Simplified(params, static_cast<std::int64_t>(lambda));
    case BoundMethod::kUb2:
      return UpperBound2(params, lambda);
    case BoundMethod::kLowerBound:
      RequireIntegerOrder(lambda, "lb");
      return LowerBound(params, static_cast<std::int64_t>(lambda));
    case BoundMethod::kLowerBoundSimplified:
      RequireIntegerOrder(lambda, "lb_simple");
      return LowerBoundSimplified(params, static_cast<std::int64_t>(lambda));
    case BoundMethod::kErlingsson:
      return ErlingssonBaseline(params, lambda);
    case BoundMethod::kBest:
      return BestUpper(params, lambda);
  }
  throw PreconditionError("unknown bound method");
}

}  // namespace shuffle_rdp
