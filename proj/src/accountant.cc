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

#include "shuffle_rdp/accountant.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shuffle_rdp/numerics.h"

namespace shuffle_rdp {

void DpGuarantee::Validate() const {
  if (!(epsilon >= 0)) throw PreconditionError("epsilon must be >= 0");
  if (!(delta > 0) || !(delta < 1)) {
    throw PreconditionError("delta must lie in (0, 1)");
  }
}

RdpCurve Compose(const CompositionPlan& plan) {
  if (plan.rounds < 1) throw PreconditionError("rounds must be >= 1");
  if (plan.per_round.empty()) {
    throw PreconditionError("composition plan needs at least one curve");
  }
  if (plan.per_round.size() == 1) {
    RdpCurve out = plan.per_round.front();
    for (RdpPoint& pt : out.points) {
      pt.epsilon *= static_cast<double>(plan.rounds);
    }
    return out;
  }
  if (static_cast<std::int64_t>(plan.per_round.size()) != plan.rounds) {
    throw PreconditionError(
        "heterogeneous plan needs exactly one curve per round");
  }
  RdpCurve out = plan.per_round.front();
  for (std::size_t t = 1; t < plan.per_round.size(); ++t) {
    const RdpCurve& curve = plan.per_round[t];
    if (!out.SameGrid(curve)) {
      throw PreconditionError("per-round curves have misaligned order grids");
    }
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      out.points[i].epsilon += curve.points[i].epsilon;
    }
  }
  return out;
}

Conversion EpsForDelta(const RdpCurve& curve, double delta) {
  if (curve.points.empty()) throw PreconditionError("curve must be nonempty");
  if (!(delta > 0) || !(delta < 1)) {
    throw PreconditionError("delta must lie in (0, 1)");
  }
  Conversion best;
  double best_value = kPosInf;
  for (const RdpPoint& pt : curve.points) {
    const double lambda = pt.order.value;
    const double penalty = (std::log(1.0 / delta) +
                            (lambda - 1) * std::log1p(-1.0 / lambda) -
                            std::log(lambda)) /
                           (lambda - 1);
    const double candidate = pt.epsilon + penalty;
    if (candidate < best_value) {
      best_value = candidate;
      best.order = pt.order;
    }
  }
  best.clamped = best_value < 0;
  best.value = std::max(0.0, best_value);
  return best;
}

Conversion DeltaForEps(const RdpCurve& curve, double eps) {
  if (curve.points.empty()) throw PreconditionError("curve must be nonempty");
  if (!(eps > 0)) throw PreconditionError("eps must be > 0");
  Conversion best;
  double best_log = kPosInf;
  for (const RdpPoint& pt : curve.points) {
    const double lambda = pt.order.value;
    const double log_candidate = (lambda - 1) * (pt.epsilon - eps) -
                                 std::log(lambda - 1) +
                                 lambda * std::log1p(-1.0 / lambda);
    if (log_candidate < best_log) {
      best_log = log_candidate;
      best.order = pt.order;
    }
  }
  best.clamped = best_log > 0;
  // Clamp into (0, 1]: a delta rounded up from underflow still certifies
  // the (eps, delta) pair.
  best.value = std::min(
      1.0, std::max(std::exp(best_log), std::numeric_limits<double>::min()));
  return best;
}

ComposedGuarantee ComposeAndConvert(const ShuffleParams& params,
                                    std::int64_t rounds, double delta,
                                    const std::vector<RdpOrder>& grid) {
  if (rounds < 1) throw PreconditionError("rounds must be >= 1");
  CompositionPlan plan;
  plan.rounds = rounds;
  plan.per_round.push_back(BestUpperCurve(params, grid));
  const RdpCurve composed = Compose(plan);
  const Conversion conv = EpsForDelta(composed, delta);
  return ComposedGuarantee{DpGuarantee{conv.value, delta}, conv.order,
                           conv.clamped};
}

std::vector<RdpOrder> DefaultLambdaGrid(double max_order) {
  if (!(max_order >= 2)) {
    throw PreconditionError("lambda grid needs max_order >= 2");
  }
  std::vector<RdpOrder> grid;
  for (std::int64_t lambda = 2; lambda <= 256; ++lambda) {
    if (static_cast<double>(lambda) > max_order) break;
    grid.push_back(RdpOrder::Integer(lambda));
  }
  for (std::int64_t lambda : {384, 512, 768, 1024}) {
    if (static_cast<double>(lambda) > max_order) break;
    grid.push_back(RdpOrder::Integer(lambda));
  }
  return grid;
}

}  // namespace shuffle_rdp
