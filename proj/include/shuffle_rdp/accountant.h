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
// RDP-to-approximate-DP conversion, adaptive composition, and the
// optimization over the Renyi order.

#ifndef SHUFFLE_RDP_ACCOUNTANT_H_
#define SHUFFLE_RDP_ACCOUNTANT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "shuffle_rdp/bounds.h"

namespace shuffle_rdp {

// An (epsilon, delta) approximate-DP pair.
struct DpGuarantee {
  double epsilon = 0.0;
  double delta = 0.0;

  void Validate() const;
};

// T adaptive rounds; a single per-round curve means identical rounds,
// several mean heterogeneous rounds (one curve per round, aligned grids).
struct CompositionPlan {
  std::int64_t rounds = 1;
  std::vector<RdpCurve> per_round;
};

// Pointwise sum of the per-round curves (T * eps(lambda) for identical
// rounds).  Misaligned order grids raise a PreconditionError.
RdpCurve Compose(const CompositionPlan& plan);

// Result of optimizing a Lemma-style conversion over the curve's orders.
// `clamped` records that the raw optimum fell outside the admissible
// range and was clipped (epsilon below 0, or delta above 1).
struct Conversion {
  double value = 0.0;
  RdpOrder order;
  bool clamped = false;
};

// Smallest eps such that the curve implies (eps, delta)-DP:
//   eps = min_lambda eps(lambda)
//         + [log(1/delta) + (lambda-1)log(1-1/lambda) - log(lambda)]
//           / (lambda-1).
// Ties break toward the smaller order.  Negative optima clamp to 0.
Conversion EpsForDelta(const RdpCurve& curve, double delta);

// Smallest delta such that the curve implies (eps, delta)-DP:
//   delta = min_lambda exp((lambda-1)(eps(lambda)-eps)) / (lambda-1)
//           * (1 - 1/lambda)^lambda,
// clamped into (0, 1] (underflow rounds up to the smallest normal
// double, which is conservative).
Conversion DeltaForEps(const RdpCurve& curve, double eps);

struct ComposedGuarantee {
  DpGuarantee dp;
  RdpOrder order;
  bool clamped = false;
};

// Builds the per-round curve with BestUpper over the order grid,
// composes T identical rounds, and converts at the given delta.
ComposedGuarantee ComposeAndConvert(const ShuffleParams& params,
                                    std::int64_t rounds, double delta,
                                    const std::vector<RdpOrder>& grid);

// Integer orders 2..256 plus {384, 512, 768, 1024}, truncated to
// max_order.  The conversion penalty decays like 1/(lambda-1), so the
// optimum for the regimes of interest sits well inside this grid.
std::vector<RdpOrder> DefaultLambdaGrid(double max_order = 1024);

}  // namespace shuffle_rdp

#endif  // SHUFFLE_RDP_ACCOUNTANT_H_
