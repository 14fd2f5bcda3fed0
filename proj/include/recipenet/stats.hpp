// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_STATS_HPP_
#define RECIPENET_STATS_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "recipenet/error.hpp"

namespace recipenet::stats {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw InvalidArgument("mean of an empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

/// Unbiased (n - 1) sample variance.
inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw InvalidArgument("variance needs at least 2 values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

/// Pearson correlation; nullopt when either side has zero variance.
inline std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("pearson: length mismatch");
  if (xs.size() < 2) throw InvalidArgument("pearson: need at least 2 points");
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
  double r = sxy / std::sqrt(sxx * syy);
  if (r > 1.0) r = 1.0;
  if (r < -1.0) r = -1.0;
  return r;
}

struct ChiSquare {
  double statistic = 0.0;
  int df = 0;
};

/// Pearson chi-square test of independence on a rows x cols count table.
/// Rows and columns whose marginal total is zero are dropped first.
inline ChiSquare chi_square(const std::vector<std::vector<double>>& table) {
  std::vector<double> row_tot, col_tot;
  std::vector<std::size_t> rows, cols;
  if (table.empty()) throw InvalidArgument("chi_square: empty table");
  const std::size_t ncol = table.front().size();
  for (const auto& r : table)
    if (r.size() != ncol) throw InvalidArgument("chi_square: ragged table");
  for (std::size_t i = 0; i < table.size(); ++i) {
    double t = 0.0;
    for (double v : table[i]) t += v;
    if (t > 0.0) {
      rows.push_back(i);
      row_tot.push_back(t);
    }
  }
  for (std::size_t j = 0; j < ncol; ++j) {
    double t = 0.0;
    for (const auto& r : table) t += r[j];
    if (t > 0.0) {
      cols.push_back(j);
      col_tot.push_back(t);
    }
  }
  if (rows.size() < 2 || cols.size() < 2)
    throw Undefined("chi_square: need at least 2 non-empty rows and columns");
  double total = 0.0;
  for (double t : row_tot) total += t;
  double chi2 = 0.0;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const double expected = row_tot[a] * col_tot[b] / total;
      const double d = table[rows[a]][cols[b]] - expected;
      chi2 += d * d / expected;
    }
  }
  return {chi2, static_cast<int>((rows.size() - 1) * (cols.size() - 1))};
}

/// Welch's unequal-variance t statistic for mean(a) - mean(b).
inline double welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw InvalidArgument("welch_t: each group needs >= 2 values");
  const double va = sample_variance(a), vb = sample_variance(b);
  const double se2 = va / static_cast<double>(a.size()) + vb / static_cast<double>(b.size());
  const double diff = mean(a) - mean(b);
  if (se2 <= 0.0) {
    if (diff == 0.0) return 0.0;
    throw Undefined("welch_t: both groups have zero variance");
  }
  return diff / std::sqrt(se2);
}

/// Bartlett's statistic for equality of variances across groups.
/// Infinite when exactly some (not all) groups have zero variance.
inline double bartlett(const std::vector<std::span<const double>>& groups) {
  if (groups.size() < 2) throw InvalidArgument("bartlett: need at least 2 groups");
  double n_total = 0.0, pooled = 0.0, sum_log = 0.0, sum_inv = 0.0;
  bool any_zero = false, all_zero = true;
  for (const auto& g : groups) {
    if (g.size() < 2) throw InvalidArgument("bartlett: each group needs >= 2 values");
    const double v = sample_variance(g);
    const double dof = static_cast<double>(g.size() - 1);
    n_total += static_cast<double>(g.size());
    pooled += dof * v;
    if (v <= 0.0)
      any_zero = true;
    else {
      all_zero = false;
      sum_log += dof * std::log(v);
    }
    sum_inv += 1.0 / dof;
  }
  if (all_zero) throw Undefined("bartlett: every group has zero variance");
  if (any_zero) return INFINITY;
  const double k = static_cast<double>(groups.size());
  pooled /= n_total - k;
  const double numerator = (n_total - k) * std::log(pooled) - sum_log;
  const double correction = 1.0 + (sum_inv - 1.0 / (n_total - k)) / (3.0 * (k - 1.0));
  return numerator / correction;
}

}  // namespace recipenet::stats

#endif  // RECIPENET_STATS_HPP_
