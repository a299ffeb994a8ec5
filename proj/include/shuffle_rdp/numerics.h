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
// Log-domain scalar arithmetic and the special functions the privacy
// bounds are built from.  Everything here is a pure function; all
// routines are safe to call concurrently.

#ifndef SHUFFLE_RDP_NUMERICS_H_
#define SHUFFLE_RDP_NUMERICS_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "shuffle_rdp/errors.h"

namespace shuffle_rdp {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// A nonnegative real x stored as log(x); -inf encodes x == 0.  NaN marks
// an invalid value (e.g. the sum of an empty term sequence).
class LogReal {
 public:
  constexpr LogReal() : log_(kNegInf) {}

  static LogReal FromLog(double log_value) { return LogReal(log_value); }
  // Requires x >= 0.
  static LogReal FromLinear(double x) {
    if (x < 0) throw PreconditionError("LogReal requires a nonnegative value");
    return LogReal(std::log(x));
  }
  static constexpr LogReal Zero() { return LogReal(kNegInf); }
  static constexpr LogReal One() { return LogReal(0.0); }
  static LogReal Nan() {
    return LogReal(std::numeric_limits<double>::quiet_NaN());
  }

  double log() const { return log_; }
  double ToLinear() const { return std::exp(log_); }
  bool IsZero() const { return log_ == kNegInf; }
  bool IsNan() const { return std::isnan(log_); }

  // Linear-domain addition via two-term log-sum-exp.
  LogReal operator+(LogReal other) const;
  // Linear-domain multiplication.
  LogReal operator*(LogReal other) const {
    return LogReal(log_ + other.log_);
  }
  LogReal Pow(double exponent) const { return LogReal(exponent * log_); }

  friend bool operator<(LogReal a, LogReal b) { return a.log_ < b.log_; }
  friend bool operator==(LogReal a, LogReal b) { return a.log_ == b.log_; }

 private:
  constexpr explicit LogReal(double log_value) : log_(log_value) {}
  double log_;
};

// log(sum_i exp(t_i)) with the usual max shift.  An empty sequence is a
// contract violation and yields NaN.
double LogSumExp(std::span<const double> log_terms);
LogReal LogSumExp(std::span<const LogReal> terms);

// ln(e^x - 1) for x >= 0, evaluated without overflow; -inf at x == 0.
double LnExpm1(double x);

// ln Gamma(z) for z > 0 (Lanczos approximation, relative error well
// below 1e-12).  Throws on z <= 0.
double LnGamma(double z);

// Binomial coefficient C(n, k) as a LogReal.  k outside [0, n] yields
// zero (the empty coefficient), by convention.
LogReal LnBinomial(std::int64_t n, std::int64_t k);

// The (n, p, i) of a central binomial moment E[(k - np)^i], k ~ Bin(n, p).
struct MomentSpec {
  std::int64_t n = 1;
  double p = 0.0;
  int order = 1;
};

// A signed magnitude kept in log domain, for quantities whose linear
// value may overflow a double.
struct SignedLog {
  int sign = 0;  // -1, 0, +1
  double log_abs = kNegInf;

  double ToLinear() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// E[(k - np)^i] for k ~ Bin(n, p).  The sum runs over the window
// k in [np - W*sigma, np + W*sigma] with W = max(20, i), pmf terms
// evaluated in log domain; positive and negative contributions are
// accumulated separately so that odd moments of Bin(n, 1/2) cancel
// exactly.
double BinomCentralMoment(const MomentSpec& spec);
SignedLog BinomCentralMomentLog(const MomentSpec& spec);

// All central moments of orders 1..max_order sharing one log-pmf table.
std::vector<SignedLog> BinomCentralMomentsUpTo(std::int64_t n, double p,
                                               int max_order);

// Whether C(lambda, k) * k * Gamma(k/2) <= lambda^k, evaluated in log
// domain.  Holds for every integer lambda >= 3 and k in [3, lambda].
bool GammaInequalityHolds(int lambda, int k);

namespace internal {

// ln P[Bin(n, p) = k] for fixed (n, p) with 0 < p < 1.
class BinomialLogPmf {
 public:
  BinomialLogPmf(std::int64_t n, double p);
  double operator()(std::int64_t k) const;
  std::int64_t n() const { return n_; }

 private:
  std::int64_t n_;
  double log_p_;
  double log_q_;
};

// Central moment with an explicit window half-width (in units of sigma);
// window_sigmas <= 0 selects the full summation over k = 0..n.
SignedLog BinomCentralMomentWindowed(std::int64_t n, double p, int order,
                                     double window_sigmas);

}  // namespace internal

}  // namespace shuffle_rdp

#endif  // SHUFFLE_RDP_NUMERICS_H_
