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
// Closed-form Renyi-DP bounds for the shuffled model of local
// differential privacy, as functions of the local privacy parameter
// eps0, the client count n, and the Renyi order lambda.

#ifndef SHUFFLE_RDP_BOUNDS_H_
#define SHUFFLE_RDP_BOUNDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shuffle_rdp/errors.h"

namespace shuffle_rdp {

// The (eps0, n) instance of a shuffled LDP deployment.  gamma is the
// Chernoff slack used when truncating the binomial mixture; 0.5 is the
// default and the value the published bounds are stated with.
struct ShuffleParams {
  double eps0 = 0.0;
  std::int64_t n = 1;
  double gamma = 0.5;

  void Validate() const;

  // q = e^{-eps0}, the weight of the shared mixture component.
  double Q() const;
  // Effective client count floor((1-gamma)(n-1)/e^{eps0}) + 1 after the
  // Chernoff truncation.
  std::int64_t NBar() const;
  // Log of the Chernoff remainder term: eps0*lambda - gamma^2(n-1)/(2e^{eps0}).
  double ChernoffLogTerm(double lambda) const;
};

// A Renyi order.  Orders are real and > 1; several bounds are defined
// only at integer orders >= 2.
struct RdpOrder {
  double value = 2.0;
  bool is_integer = true;

  static RdpOrder Of(double value);
  static RdpOrder Integer(std::int64_t value);
};

struct RdpPoint {
  RdpOrder order;
  double epsilon = 0.0;
};

// A map from Renyi order to privacy parameter epsilon(lambda), with
// strictly increasing orders and finite nonnegative epsilons.
struct RdpCurve {
  std::vector<RdpPoint> points;

  void Validate() const;
  bool SameGrid(const RdpCurve& other) const;
};

// First upper bound: polynomial moment expansion plus Chernoff
// remainder.  Integer lambda >= 2, n >= 2.
double UpperBound1(const ShuffleParams& params, std::int64_t lambda);

// Simplified form of the first upper bound, valid under the guard
// lambda^4 * e^{5 eps0} < n / 9 (throws PreconditionError otherwise,
// naming the inequality).
double UpperBound1Simplified(const ShuffleParams& params, std::int64_t lambda);

// Second upper bound: Gaussian-mgf form, valid at any real lambda > 1.
double UpperBound2(const ShuffleParams& params, double lambda);

// Lower bound attained by binary randomized response on the extremal
// dataset pair; integer lambda >= 2.
double LowerBound(const ShuffleParams& params, std::int64_t lambda);

// Lower bound with the order >= 3 moment terms dropped.
double LowerBoundSimplified(const ShuffleParams& params, std::int64_t lambda);

// The DP->RDP conversion baseline: lambda * 2 e^{4 eps0}(e^{eps0}-1)^2 / n.
double ErlingssonBaseline(const ShuffleParams& params, double lambda);

enum class UpperBoundKind { kUb1, kBest };

// Extends an integer-order upper bound to real orders via convexity of
// (lambda - 1) eps(lambda).  Orders in (1, 2) conservatively receive the
// lambda = 2 value.  Integer orders pass through.
double RdpRealOrder(const ShuffleParams& params, double lambda,
                    UpperBoundKind kind);

// Pointwise minimum of the valid upper bounds, including the pure-DP
// cap eps(lambda) <= eps0.
double BestUpper(const ShuffleParams& params, double lambda);

// Curve of BestUpper over the given integer orders; non-finite entries
// are omitted.
RdpCurve BestUpperCurve(const ShuffleParams& params,
                        const std::vector<RdpOrder>& orders);

enum class BoundMethod {
  kUb1,
  kUb1Simplified,
  kUb2,
  kLowerBound,
  kLowerBoundSimplified,
  kErlingsson,
  kBest,
};

std::optional<BoundMethod> ParseBoundMethod(std::string_view name);
std::string BoundMethodName(BoundMethod method);
const std::vector<BoundMethod>& AllBoundMethods();

// Dispatch by method; integer-only methods reject fractional lambda.
double EvaluateBound(const ShuffleParams& params, BoundMethod method,
                     double lambda);

}  // namespace shuffle_rdp

#endif  // SHUFFLE_RDP_BOUNDS_H_
