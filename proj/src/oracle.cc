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

#include "shuffle_rdp/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shuffle_rdp/numerics.h"

namespace shuffle_rdp {
namespace {

constexpr std::int64_t kEnumerationBudget = 1000000;
constexpr int kMaxConvolutionClients = 12;

// C(a, b) for small b, saturating at INT64_MAX.
std::int64_t BinomialCountSaturating(std::int64_t a, std::int64_t b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 result = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    result = result * static_cast<unsigned __int128>(a - b + i) /
             static_cast<unsigned __int128>(i);
    if (result > static_cast<unsigned __int128>(
                     std::numeric_limits<std::int64_t>::max())) {
      return std::numeric_limits<std::int64_t>::max();
    }
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t CompositionCount(std::int64_t total, int bins) {
  return BinomialCountSaturating(total + bins - 1, bins - 1);
}

double LnMultinomialPmf(int m, const std::vector<double>& p,
                        const std::vector<int>& h) {
  double log_pmf = LnGamma(m + 1.0);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (h[j] == 0) continue;
    if (p[j] == 0) return kNegInf;
    log_pmf += h[j] * std::log(p[j]) - LnGamma(h[j] + 1.0);
  }
  return log_pmf;
}

void ValidateNeighborPair(const Dataset& dataset, const Dataset& neighbor,
                          std::size_t num_rows) {
  if (dataset.empty() || dataset.size() != neighbor.size()) {
    throw PreconditionError("datasets must be nonempty and the same size");
  }
  for (std::size_t i = 0; i + 1 < dataset.size(); ++i) {
    if (dataset[i] != neighbor[i]) {
      throw PreconditionError(
          "neighboring datasets must differ only in the last entry");
    }
  }
  for (int symbol : dataset) {
    if (symbol < 0 || static_cast<std::size_t>(symbol) >= num_rows) {
      throw PreconditionError("dataset symbol outside the mechanism's inputs");
    }
  }
  const int last = neighbor.back();
  if (last < 0 || static_cast<std::size_t>(last) >= num_rows) {
    throw PreconditionError("dataset symbol outside the mechanism's inputs");
  }
}

// Exact histogram distribution induced by independent per-client rows.
HistogramDistribution DistributionOfRows(
    const std::vector<const std::vector<double>*>& rows, int num_bins) {
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw PreconditionError("at least one client row is required");
  if (n > kMaxConvolutionClients ||
      CompositionCount(n, num_bins) > kEnumerationBudget) {
    throw PreconditionError("enumeration budget exceeded");
  }
  std::vector<double> current = {1.0};  // point mass on the zero histogram
  for (int t = 0; t < n; ++t) {
    const std::vector<double>& row = *rows[t];
    std::vector<double> next(CompositionCount(t + 1, num_bins), 0.0);
    std::vector<std::vector<int>> hists = EnumerateHistograms(t, num_bins);
    for (std::size_t idx = 0; idx < hists.size(); ++idx) {
      const double mass = current[idx];
      if (mass == 0) continue;
      std::vector<int>& h = hists[idx];
      for (int j = 0; j < num_bins; ++j) {
        if (row[j] == 0) continue;
        ++h[j];
        next[ColexRank(h)] += mass * row[j];
        --h[j];
      }
    }
    current = std::move(next);
  }
  return HistogramDistribution{n, num_bins, std::move(current)};
}

std::vector<const std::vector<double>*> RowsForDataset(
    const DiscreteMechanism& mech, const Dataset& dataset) {
  std::vector<const std::vector<double>*> rows;
  rows.reserve(dataset.size());
  for (int symbol : dataset) rows.push_back(&mech.rows[symbol]);
  return rows;
}

}  // namespace

void DiscreteMechanism::Validate() const {
  if (num_bins < 1) throw PreconditionError("mechanism needs num_bins >= 1");
  if (rows.empty()) throw PreconditionError("mechanism needs at least one row");
  for (const std::vector<double>& row : rows) {
    if (static_cast<int>(row.size()) != num_bins) {
      throw PreconditionError("row length must equal num_bins");
    }
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0)) throw PreconditionError("row entries must be >= 0");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
      throw PreconditionError("rows must sum to 1 within 1e-12");
    }
  }
  for (int j = 0; j < num_bins; ++j) {
    bool any_zero = false;
    bool all_zero = true;
    for (const std::vector<double>& row : rows) {
      any_zero |= row[j] == 0;
      all_zero &= row[j] == 0;
    }
    if (any_zero && !all_zero) {
      throw PreconditionError(
          "a zero entry is allowed only in bins that are zero in every row");
    }
  }
  if (LdpParameter() > declared_eps0 + 1e-9) {
    throw PreconditionError("rows exceed the declared eps0 likelihood ratio");
  }
}

double DiscreteMechanism::LdpParameter() const {
  double worst = 0.0;
  for (int j = 0; j < num_bins; ++j) {
    if (rows.front()[j] == 0) continue;  // dead bin (zero in every row)
    double lo = kPosInf;
    double hi = kNegInf;
    for (const std::vector<double>& row : rows) {
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
    worst = std::max(worst, std::log(hi / lo));
  }
  return worst;
}

std::int64_t HistogramCount(std::int64_t n, int num_bins) {
  if (n < 0 || num_bins < 1) {
    throw PreconditionError("histograms need n >= 0 and num_bins >= 1");
  }
  return CompositionCount(n, num_bins);
}

std::vector<std::vector<int>> EnumerateHistograms(int n, int num_bins) {
  std::vector<std::vector<int>> out;
  const std::int64_t count = CompositionCount(n, num_bins);
  if (count > kEnumerationBudget) {
    throw PreconditionError("enumeration budget exceeded");
  }
  out.reserve(count);
  // Iterative colex generation: the last bin is the most significant.
  std::vector<int> h(num_bins, 0);
  h[0] = n;
  while (true) {
    out.push_back(h);
    // Find the first bin (from the front) that can donate to the next one.
    int j = 0;
    while (j < num_bins - 1 && h[j] == 0) ++j;
    if (j == num_bins - 1) break;
    const int rest = h[j] - 1;
    ++h[j + 1];
    h[j] = 0;
    h[0] = rest;
  }
  return out;
}

std::int64_t ColexRank(const std::vector<int>& histogram) {
  const int bins = static_cast<int>(histogram.size());
  std::int64_t total = 0;
  for (int v : histogram) total += v;
  std::int64_t rank = 0;
  std::int64_t remaining = total;
  for (int j = bins - 1; j >= 1; --j) {
    for (int v = 0; v < histogram[j]; ++v) {
      rank += CompositionCount(remaining - v, j);
    }
    remaining -= histogram[j];
  }
  return rank;
}

double HistogramDistribution::TotalMass() const {
  double sum = 0.0;
  for (double v : mass) sum += v;
  return sum;
}

HistogramDistribution ShuffleDistribution(const DiscreteMechanism& mech,
                                          const Dataset& dataset) {
  mech.Validate();
  if (dataset.empty()) throw PreconditionError("dataset must be nonempty");
  for (int symbol : dataset) {
    if (symbol < 0 || static_cast<std::size_t>(symbol) >= mech.rows.size()) {
      throw PreconditionError("dataset symbol outside the mechanism's inputs");
    }
  }
  return DistributionOfRows(RowsForDataset(mech, dataset), mech.num_bins);
}

double LogPowerExpectation(const HistogramDistribution& p,
                           const HistogramDistribution& q, double lambda) {
  if (p.n != q.n || p.num_bins != q.num_bins) {
    throw PreconditionError("distributions must share (n, num_bins)");
  }
  if (!(lambda > 1)) throw PreconditionError("lambda must be > 1");
  std::vector<double> terms;
  terms.reserve(p.mass.size());
  for (std::size_t i = 0; i < p.mass.size(); ++i) {
    const double pm = p.mass[i];
    const double qm = q.mass[i];
    if (pm == 0) continue;
    if (qm == 0) return kPosInf;  // support violation
    terms.push_back(lambda * std::log(pm) - (lambda - 1) * std::log(qm));
  }
  if (terms.empty()) return kNegInf;
  return LogSumExp(terms);
}

double RenyiDivergence(const HistogramDistribution& p,
                       const HistogramDistribution& q, double lambda) {
  const double log_power = LogPowerExpectation(p, q, lambda);
  if (log_power == kPosInf) return kPosInf;
  return std::max(0.0, log_power / (lambda - 1));
}

double Exact2RrRenyi(double eps0, std::int64_t n, std::int64_t lambda,
                     TwoRrDirection direction) {
  if (!(eps0 >= 0)) throw PreconditionError("eps0 must be >= 0");
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (lambda < 2) throw PreconditionError("lambda must be an integer >= 2");
  if (eps0 == 0) return 0.0;

  const double p = 1.0 / (std::exp(eps0) + 1.0);
  const double mean = static_cast<double>(n) * p;
  const double sigma = std::sqrt(mean * (1 - p));
  const double window = static_cast<double>(std::max<std::int64_t>(20, lambda));
  const std::int64_t klo = std::max<std::int64_t>(
      0, static_cast<std::int64_t>(std::floor(mean - window * sigma)));
  const std::int64_t khi = std::min<std::int64_t>(
      n, static_cast<std::int64_t>(std::ceil(mean + window * sigma)));

  // Likelihood ratio M(D')(k) / M(D)(k) = e^{-eps0} + k (e^{2 eps0}-1)/(n e^{eps0}).
  const double base = std::exp(-eps0);
  const double slope =
      std::expm1(2 * eps0) / (static_cast<double>(n) * std::exp(eps0));
  const double power = direction == TwoRrDirection::kDprimeToD
                           ? static_cast<double>(lambda)
                           : 1.0 - static_cast<double>(lambda);

  const internal::BinomialLogPmf pmf(n, p);
  std::vector<double> terms;
  terms.reserve(khi - klo + 1);
  for (std::int64_t k = klo; k <= khi; ++k) {
    terms.push_back(pmf(k) +
                    power * std::log(base + slope * static_cast<double>(k)));
  }
  return std::max(0.0, LogSumExp(terms) / static_cast<double>(lambda - 1));
}

bool MixtureDecompositionCheck(const DiscreteMechanism& mech,
                               const Dataset& dataset,
                               const Dataset& neighbor, double tol) {
  mech.Validate();
  ValidateNeighborPair(dataset, neighbor, mech.rows.size());
  const int n = static_cast<int>(dataset.size());
  if (n > 6) throw PreconditionError("mixture check requires n <= 6");

  const double q = std::exp(-mech.declared_eps0);
  const std::vector<double>& p_last = mech.rows[dataset.back()];
  const std::vector<double>& pp_last = mech.rows[neighbor.back()];

  // Residual components ptilde_i = (p_i - q p'_n) / (1 - q).
  std::vector<std::vector<double>> tilde(n - 1);
  if (q < 1) {
    for (int i = 0; i < n - 1; ++i) {
      const std::vector<double>& row = mech.rows[dataset[i]];
      tilde[i].resize(mech.num_bins);
      for (int j = 0; j < mech.num_bins; ++j) {
        const double v = (row[j] - q * pp_last[j]) / (1 - q);
        if (v < -1e-12) {
          throw PreconditionError(
              "mechanism is not eps0-LDP at the declared eps0: residual "
              "mixture component has a negative entry");
        }
        tilde[i][j] = std::max(0.0, v);
      }
    }
  }

  const HistogramDistribution exact =
      DistributionOfRows(RowsForDataset(mech, dataset), mech.num_bins);
  const HistogramDistribution exact_neighbor =
      DistributionOfRows(RowsForDataset(mech, neighbor), mech.num_bins);

  std::vector<double> mixed(exact.mass.size(), 0.0);
  std::vector<double> mixed_neighbor(exact.mass.size(), 0.0);
  const int free_clients = n - 1;
  for (unsigned mask = 0; mask < (1u << free_clients); ++mask) {
    const int chosen = __builtin_popcount(mask);
    const double weight = std::pow(q, chosen) *
                          std::pow(1 - q, free_clients - chosen);
    if (weight == 0) continue;
    std::vector<const std::vector<double>*> rows;
    rows.reserve(n);
    for (int i = 0; i < free_clients; ++i) {
      rows.push_back((mask >> i) & 1u ? &pp_last : &tilde[i]);
    }
    rows.push_back(&p_last);
    const HistogramDistribution part = DistributionOfRows(rows, mech.num_bins);
    rows.back() = &pp_last;
    const HistogramDistribution part_neighbor =
        DistributionOfRows(rows, mech.num_bins);
    for (std::size_t idx = 0; idx < mixed.size(); ++idx) {
      mixed[idx] += weight * part.mass[idx];
      mixed_neighbor[idx] += weight * part_neighbor.mass[idx];
    }
  }

  double worst = 0.0;
  for (std::size_t idx = 0; idx < mixed.size(); ++idx) {
    worst = std::max(worst, std::fabs(mixed[idx] - exact.mass[idx]));
    worst = std::max(worst,
                     std::fabs(mixed_neighbor[idx] - exact_neighbor.mass[idx]));
  }
  return worst <= tol;
}

bool MonotonicityCheck(const DiscreteMechanism& mech, const Dataset& dataset,
                       const Dataset& neighbor, double lambda) {
  mech.Validate();
  ValidateNeighborPair(dataset, neighbor, mech.rows.size());
  const int n = static_cast<int>(dataset.size());
  if (n > 8) throw PreconditionError("monotonicity check requires n <= 8");
  if (n < 2) return true;

  const double full = LogPowerExpectation(
      DistributionOfRows(RowsForDataset(mech, dataset), mech.num_bins),
      DistributionOfRows(RowsForDataset(mech, neighbor), mech.num_bins),
      lambda);
  for (int drop = 0; drop < n - 1; ++drop) {
    Dataset reduced = dataset;
    Dataset reduced_neighbor = neighbor;
    reduced.erase(reduced.begin() + drop);
    reduced_neighbor.erase(reduced_neighbor.begin() + drop);
    const double smaller = LogPowerExpectation(
        DistributionOfRows(RowsForDataset(mech, reduced), mech.num_bins),
        DistributionOfRows(RowsForDataset(mech, reduced_neighbor),
                           mech.num_bins),
        lambda);
    if (full > smaller + 1e-12) return false;
  }
  return true;
}

double LogSpecialPairPowerExpectation(const std::vector<double>& p_row,
                                      const std::vector<double>& pprime_row,
                                      int size, double lambda) {
  if (size < 1) throw PreconditionError("special pair needs size >= 1");
  if (p_row.size() != pprime_row.size() || p_row.empty()) {
    throw PreconditionError("rows must be nonempty and the same length");
  }
  const int num_bins = static_cast<int>(p_row.size());
  std::vector<const std::vector<double>*> rows(size, &pprime_row);
  const HistogramDistribution reference = DistributionOfRows(rows, num_bins);
  rows.back() = &p_row;
  const HistogramDistribution offset = DistributionOfRows(rows, num_bins);
  return LogPowerExpectation(offset, reference, lambda);
}

bool ReductionCheck(const DiscreteMechanism& mech, const Dataset& dataset,
                    const Dataset& neighbor, double lambda) {
  mech.Validate();
  ValidateNeighborPair(dataset, neighbor, mech.rows.size());
  const int n = static_cast<int>(dataset.size());
  if (n > 6) throw PreconditionError("reduction check requires n <= 6");

  const double lhs = LogPowerExpectation(
      DistributionOfRows(RowsForDataset(mech, dataset), mech.num_bins),
      DistributionOfRows(RowsForDataset(mech, neighbor), mech.num_bins),
      lambda);

  const double q = std::exp(-mech.declared_eps0);
  const std::vector<double>& p_row = mech.rows[dataset.back()];
  const std::vector<double>& pp_row = mech.rows[neighbor.back()];
  double rhs = 0.0;
  for (int m = 0; m <= n - 1; ++m) {
    const double weight = LnBinomial(n - 1, m).ToLinear() * std::pow(q, m) *
                          std::pow(1 - q, n - 1 - m);
    if (weight == 0) continue;
    rhs += weight *
           std::exp(LogSpecialPairPowerExpectation(p_row, pp_row, m + 1,
                                                   lambda));
  }
  return std::exp(lhs) <= rhs * (1 + 1e-12) + 1e-12;
}

double SpecialCaseDivergence(double eps0, int m, const std::vector<double>& p,
                             const std::vector<double>& pprime, double lambda) {
  if (!(eps0 >= 0)) throw PreconditionError("eps0 must be >= 0");
  if (m < 1) throw PreconditionError("m must be >= 1");
  if (!(lambda > 1)) throw PreconditionError("lambda must be > 1");
  if (p.size() != pprime.size() || p.empty()) {
    throw PreconditionError("rows must be nonempty and the same length");
  }
  const int num_bins = static_cast<int>(p.size());
  const double hi = std::exp(eps0) * (1 + 1e-9);
  const double lo = std::exp(-eps0) * (1 - 1e-9);
  std::vector<double> ratio(num_bins, 0.0);
  for (int j = 0; j < num_bins; ++j) {
    if (p[j] == 0 && pprime[j] == 0) continue;
    if (p[j] == 0 || pprime[j] == 0) {
      throw PreconditionError("pair leaves the eps0 likelihood-ratio polytope");
    }
    ratio[j] = pprime[j] / p[j];
    if (ratio[j] > hi || ratio[j] < lo) {
      throw PreconditionError("pair leaves the eps0 likelihood-ratio polytope");
    }
  }
  if (HistogramCount(m, num_bins) > kEnumerationBudget) {
    throw PreconditionError("enumeration budget exceeded");
  }

  const std::vector<std::vector<int>> hists = EnumerateHistograms(m, num_bins);
  std::vector<double> terms;
  terms.reserve(hists.size());
  for (const std::vector<int>& h : hists) {
    const double log_pmf = LnMultinomialPmf(m, p, h);
    if (log_pmf == kNegInf) continue;
    double mean_ratio = 0.0;
    for (int j = 0; j < num_bins; ++j) {
      mean_ratio += ratio[j] * h[j];
    }
    mean_ratio /= m;
    terms.push_back(log_pmf + lambda * std::log(mean_ratio));
  }
  return std::max(0.0, LogSumExp(terms) / (lambda - 1));
}

MomentReport MomentIdentitiesCheck(int m, const std::vector<double>& p,
                                   const std::vector<double>& pprime,
                                   int max_order, double eps0) {
  if (m < 1) throw PreconditionError("m must be >= 1");
  if (max_order < 2) throw PreconditionError("max_order must be >= 2");
  if (p.size() != pprime.size() || p.empty()) {
    throw PreconditionError("rows must be nonempty and the same length");
  }
  const int num_bins = static_cast<int>(p.size());
  if (HistogramCount(m, num_bins) > kEnumerationBudget) {
    throw PreconditionError("enumeration budget exceeded");
  }

  std::vector<double> ratio(num_bins, 0.0);
  for (int j = 0; j < num_bins; ++j) {
    if (p[j] == 0 && pprime[j] == 0) continue;
    if (p[j] == 0) throw PreconditionError("p must be positive on the support");
    ratio[j] = pprime[j] / p[j];
  }

  std::vector<double> raw(max_order + 1, 0.0);
  std::vector<double> raw_abs(max_order + 1, 0.0);
  for (const std::vector<int>& h : EnumerateHistograms(m, num_bins)) {
    const double log_pmf = LnMultinomialPmf(m, p, h);
    if (log_pmf == kNegInf) continue;
    const double weight = std::exp(log_pmf);
    double x = -static_cast<double>(m);
    for (int j = 0; j < num_bins; ++j) x += ratio[j] * h[j];
    double pow_x = 1.0;
    double pow_ax = 1.0;
    const double ax = std::fabs(x);
    for (int i = 1; i <= max_order; ++i) {
      pow_x *= x;
      pow_ax *= ax;
      raw[i] += weight * pow_x;
      raw_abs[i] += weight * pow_ax;
    }
  }

  MomentReport report;
  report.mean = raw[1];
  report.mean_ok = std::fabs(report.mean) <= 1e-10 * m;
  report.variance = raw[2];
  report.expected_variance = m * VarianceTerm(p, pprime);
  report.variance_ok =
      std::fabs(report.variance - report.expected_variance) <=
      1e-10 * std::max(1.0, std::fabs(report.expected_variance));
  const double nu = std::sinh(eps0);
  report.caps_ok = true;
  for (int i = 3; i <= max_order; ++i) {
    const double cap =
        std::exp(std::log(static_cast<double>(i)) + LnGamma(i / 2.0) +
                 (i / 2.0) * std::log(2.0 * m * nu * nu));
    report.moments.push_back(raw[i]);
    report.abs_moments.push_back(raw_abs[i]);
    report.caps.push_back(cap);
    const double slack = 1e-12 * std::max(1.0, cap);
    if (raw[i] > cap + slack || raw_abs[i] > cap + slack) {
      report.caps_ok = false;
    }
  }
  return report;
}

double SupVarianceVertex(double eps0) {
  if (!(eps0 >= 0)) throw PreconditionError("eps0 must be >= 0");
  const double em = std::expm1(eps0);
  return em * em * std::exp(-eps0);
}

double VarianceTerm(const std::vector<double>& p,
                    const std::vector<double>& pprime) {
  if (p.size() != pprime.size() || p.empty()) {
    throw PreconditionError("rows must be nonempty and the same length");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (pprime[j] == 0) continue;
    if (p[j] == 0) return kPosInf;
    sum += pprime[j] * pprime[j] / p[j];
  }
  return sum - 1.0;
}

void TwoBinVertex(double eps0, std::vector<double>& p,
                  std::vector<double>& pprime) {
  const double e = std::exp(eps0);
  p = {1.0 / (e + 1.0), e / (e + 1.0)};
  pprime = {e / (e + 1.0), 1.0 / (e + 1.0)};
}

}  // namespace shuffle_rdp
