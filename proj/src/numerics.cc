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

#include "shuffle_rdp/numerics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace shuffle_rdp {
namespace {

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kLnSqrtTwoPi = 0.91893853320467274178;  // ln sqrt(2*pi)
constexpr double kLnPi = 1.1447298858494001741;          // ln pi

double LnGammaLanczos(double z) {
  // Valid for z >= 0.5.
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i - 1);
  const double t = z + 6.5;
  return kLnSqrtTwoPi + (z - 0.5) * std::log(t) - t + std::log(acc);
}

struct SignedLogAccumulator {
  std::vector<double> pos;
  std::vector<double> neg;

  void Add(int sign, double log_abs) {
    if (sign == 0 || log_abs == kNegInf) return;
    (sign > 0 ? pos : neg).push_back(log_abs);
  }

  SignedLog Combine() const {
    const double lp = pos.empty() ? kNegInf : LogSumExp(pos);
    const double ln = neg.empty() ? kNegInf : LogSumExp(neg);
    if (lp == ln) return SignedLog{0, kNegInf};
    if (lp > ln) {
      return SignedLog{+1, ln == kNegInf
                               ? lp
                               : lp + std::log1p(-std::exp(ln - lp))};
    }
    return SignedLog{-1, lp == kNegInf
                             ? ln
                             : ln + std::log1p(-std::exp(lp - ln))};
  }
};

}  // namespace

LogReal LogReal::operator+(LogReal other) const {
  const double a = log_;
  const double b = other.log_;
  if (std::isnan(a) || std::isnan(b)) return LogReal::Nan();
  if (a == kNegInf) return other;
  if (b == kNegInf) return *this;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == kPosInf) return LogReal(kPosInf);
  return LogReal(hi + std::log1p(std::exp(lo - hi)));
}

double LogSumExp(std::span<const double> log_terms) {
  if (log_terms.empty()) return std::numeric_limits<double>::quiet_NaN();
  double hi = kNegInf;
  for (double t : log_terms) {
    if (std::isnan(t)) return t;
    hi = std::max(hi, t);
  }
  if (hi == kNegInf || hi == kPosInf) return hi;
  double sum = 0.0;
  for (double t : log_terms) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

LogReal LogSumExp(std::span<const LogReal> terms) {
  if (terms.empty()) return LogReal::Nan();
  std::vector<double> logs;
  logs.reserve(terms.size());
  for (LogReal t : terms) logs.push_back(t.log());
  return LogReal::FromLog(LogSumExp(logs));
}

double LnExpm1(double x) {
  if (x < 0) throw PreconditionError("LnExpm1 requires x >= 0");
  if (x == 0) return kNegInf;
  if (x > 0.6931471805599453) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

double LnGamma(double z) {
  if (!(z > 0)) throw PreconditionError("LnGamma requires z > 0");
  if (z < 0.5) {
    // Reflection keeps the Lanczos argument away from the pole.
    return kLnPi - std::log(std::sin(M_PI * z)) - LnGammaLanczos(1.0 - z);
  }
  return LnGammaLanczos(z);
}

LogReal LnBinomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw PreconditionError("LnBinomial requires n >= 0");
  if (k < 0 || k > n) return LogReal::Zero();
  const std::int64_t kk = std::min(k, n - k);
  if (kk == 0) return LogReal::One();
  if (kk <= 32) {
    // Short products stay exact where the lgamma difference would cancel.
    double sum = 0.0;
    for (std::int64_t t = 0; t < kk; ++t) {
      sum += std::log(static_cast<double>(n - t) / static_cast<double>(t + 1));
    }
    return LogReal::FromLog(sum);
  }
  const double nn = static_cast<double>(n);
  const double dk = static_cast<double>(kk);
  return LogReal::FromLog(LnGamma(nn + 1) - LnGamma(dk + 1) -
                          LnGamma(nn - dk + 1));
}

namespace internal {

BinomialLogPmf::BinomialLogPmf(std::int64_t n, double p)
    : n_(n), log_p_(std::log(p)), log_q_(std::log1p(-p)) {
  if (n < 0 || !(p > 0) || !(p < 1)) {
    throw PreconditionError("BinomialLogPmf requires n >= 0 and 0 < p < 1");
  }
}

double BinomialLogPmf::operator()(std::int64_t k) const {
  return LnBinomial(n_, k).log() + static_cast<double>(k) * log_p_ +
         static_cast<double>(n_ - k) * log_q_;
}

namespace {

// Windowed signed-log summation of pmf(k) * (k - np)^order.  Terms are
// visited in mirror-pair order around the mean so that the positive and
// negative accumulations of a symmetric pmf cancel exactly.
SignedLog CentralMomentFromTable(const std::vector<double>& log_pmf,
                                 const std::vector<double>& log_dist,
                                 std::int64_t table_lo, double mean, int order,
                                 std::int64_t klo, std::int64_t khi) {
  SignedLogAccumulator acc;
  const std::int64_t anchor = static_cast<std::int64_t>(std::floor(mean));
  const bool odd = (order % 2) != 0;
  for (std::int64_t step = 0;; ++step) {
    const std::int64_t below = anchor - step;
    const std::int64_t above = anchor + 1 + step;
    if (below < klo && above > khi) break;
    if (below >= klo && below <= khi) {
      const std::int64_t i = below - table_lo;
      if (log_dist[i] != kNegInf) {
        const int sign = (static_cast<double>(below) > mean || !odd) ? +1 : -1;
        acc.Add(sign, log_pmf[i] + order * log_dist[i]);
      }
    }
    if (above >= klo && above <= khi) {
      const std::int64_t i = above - table_lo;
      if (log_dist[i] != kNegInf) {
        const int sign = (static_cast<double>(above) > mean || !odd) ? +1 : -1;
        acc.Add(sign, log_pmf[i] + order * log_dist[i]);
      }
    }
  }
  return acc.Combine();
}

void BuildTables(std::int64_t n, double p, std::int64_t lo, std::int64_t hi,
                 std::vector<double>& log_pmf, std::vector<double>& log_dist) {
  const BinomialLogPmf pmf(n, p);
  const double mean = static_cast<double>(n) * p;
  log_pmf.resize(hi - lo + 1);
  log_dist.resize(hi - lo + 1);
  for (std::int64_t k = lo; k <= hi; ++k) {
    log_pmf[k - lo] = pmf(k);
    const double d = std::fabs(static_cast<double>(k) - mean);
    log_dist[k - lo] = d == 0 ? kNegInf : std::log(d);
  }
}

void WindowBounds(std::int64_t n, double p, double window_sigmas,
                  std::int64_t& lo, std::int64_t& hi) {
  if (window_sigmas <= 0) {
    lo = 0;
    hi = n;
    return;
  }
  const double mean = static_cast<double>(n) * p;
  const double sigma = std::sqrt(mean * (1 - p));
  lo = std::max<std::int64_t>(
      0, static_cast<std::int64_t>(std::floor(mean - window_sigmas * sigma)));
  hi = std::min<std::int64_t>(
      n, static_cast<std::int64_t>(std::ceil(mean + window_sigmas * sigma)));
}

}  // namespace

SignedLog BinomCentralMomentWindowed(std::int64_t n, double p, int order,
                                     double window_sigmas) {
  if (n < 1 || !(p >= 0) || !(p <= 1) || order < 1) {
    throw PreconditionError(
        "central moment requires n >= 1, p in [0, 1], order >= 1");
  }
  if (p == 0 || p == 1) return SignedLog{0, kNegInf};  // point mass
  std::int64_t lo = 0;
  std::int64_t hi = n;
  WindowBounds(n, p, window_sigmas, lo, hi);
  std::vector<double> log_pmf;
  std::vector<double> log_dist;
  BuildTables(n, p, lo, hi, log_pmf, log_dist);
  return CentralMomentFromTable(log_pmf, log_dist, lo,
                                static_cast<double>(n) * p, order, lo, hi);
}

}  // namespace internal

SignedLog BinomCentralMomentLog(const MomentSpec& spec) {
  return internal::BinomCentralMomentWindowed(
      spec.n, spec.p, spec.order, std::max(20, spec.order));
}

double BinomCentralMoment(const MomentSpec& spec) {
  return BinomCentralMomentLog(spec).ToLinear();
}

std::vector<SignedLog> BinomCentralMomentsUpTo(std::int64_t n, double p,
                                               int max_order) {
  if (n < 1 || !(p >= 0) || !(p <= 1) || max_order < 1) {
    throw PreconditionError(
        "central moments require n >= 1, p in [0, 1], max_order >= 1");
  }
  std::vector<SignedLog> moments(max_order + 1);
  moments[0] = SignedLog{+1, 0.0};
  if (p == 0 || p == 1) return moments;

  std::int64_t table_lo = 0;
  std::int64_t table_hi = n;
  internal::WindowBounds(n, p, std::max(20, max_order), table_lo, table_hi);
  std::vector<double> log_pmf;
  std::vector<double> log_dist;
  internal::BuildTables(n, p, table_lo, table_hi, log_pmf, log_dist);

  const double mean = static_cast<double>(n) * p;
  for (int order = 1; order <= max_order; ++order) {
    std::int64_t lo = 0;
    std::int64_t hi = n;
    internal::WindowBounds(n, p, std::max(20, order), lo, hi);
    lo = std::max(lo, table_lo);
    hi = std::min(hi, table_hi);
    moments[order] = internal::CentralMomentFromTable(
        log_pmf, log_dist, table_lo, mean, order, lo, hi);
  }
  return moments;
}

bool GammaInequalityHolds(int lambda, int k) {
  if (lambda < 3 || k < 3 || k > lambda) {
    throw PreconditionError(
        "gamma inequality requires lambda >= 3 and k in [3, lambda]");
  }
  const double lhs = LnBinomial(lambda, k).log() + std::log(k) +
                     LnGamma(k / 2.0);
  return lhs <= k * std::log(static_cast<double>(lambda));
}

}  // namespace shuffle_rdp
