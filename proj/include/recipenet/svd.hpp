// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_SVD_HPP_
#define RECIPENET_SVD_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "recipenet/error.hpp"
#include "recipenet/log.hpp"
#include "recipenet/networks.hpp"
#include "recipenet/rng.hpp"

namespace recipenet {

/// Column-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[j * rows + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data[j * rows + i]; }
  std::span<double> col(std::size_t j) { return {data.data() + j * rows, rows}; }
  std::span<const double> col(std::size_t j) const { return {data.data() + j * rows, rows}; }
};

/// Compressed sparse row matrix.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> col_idx;
  std::vector<double> values;

  /// From a row-major dense array; exact zeros are dropped.
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols, std::span<const double> row_major) {
    if (row_major.size() != rows * cols) throw InvalidArgument("SparseMatrix: size mismatch");
    SparseMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.row_ptr.push_back(0);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        const double v = row_major[i * cols + j];
        if (v != 0.0) {
          m.col_idx.push_back(j);
          m.values.push_back(v);
        }
      }
      m.row_ptr.push_back(m.col_idx.size());
    }
    return m;
  }

  static SparseMatrix from_graph(const WeightedDiGraph& g) {
    SparseMatrix m;
    m.rows = m.cols = g.size();
    m.row_ptr.assign(1, 0);
    std::size_t row = 0;
    for (const auto& [e, w] : g.edges()) {
      while (row < e.first) {
        m.row_ptr.push_back(m.col_idx.size());
        ++row;
      }
      if (w != 0.0) {
        m.col_idx.push_back(e.second);
        m.values.push_back(w);
      }
    }
    while (row < m.rows) {
      m.row_ptr.push_back(m.col_idx.size());
      ++row;
    }
    return m;
  }

  std::size_t nnz() const { return values.size(); }

  /// Y = A X
  DenseMatrix times(const DenseMatrix& x) const {
    DenseMatrix y(rows, x.cols);
    for (std::size_t c = 0; c < x.cols; ++c) {
      auto xc = x.col(c);
      auto yc = y.col(c);
      for (std::size_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += values[p] * xc[col_idx[p]];
        yc[i] = s;
      }
    }
    return y;
  }

  /// Y = A^T X
  DenseMatrix transpose_times(const DenseMatrix& x) const {
    DenseMatrix y(cols, x.cols);
    for (std::size_t c = 0; c < x.cols; ++c) {
      auto xc = x.col(c);
      auto yc = y.col(c);
      for (std::size_t i = 0; i < rows; ++i) {
        const double xi = xc[i];
        if (xi == 0.0) continue;
        for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) yc[col_idx[p]] += values[p] * xi;
      }
    }
    return y;
  }
};

struct LowRankBasis {
  std::size_t k = 0;
  std::vector<double> singular_values;  // descending
  DenseMatrix left;                     // rows x k
  DenseMatrix right;                    // cols x k
  bool converged = true;
  int iterations = 0;
};

struct SvdOptions {
  double tol = 1e-8;
  double convergence = 1e-10;
  int max_iterations = 3000;
  std::size_t oversample = 10;
  std::uint64_t seed = 0;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// Modified Gram-Schmidt, two passes; columns that collapse are refilled from rng.
inline void orthonormalize(DenseMatrix& q, Rng& rng) {
  for (std::size_t j = 0; j < q.cols; ++j) {
    auto cj = q.col(j);
    double before = std::sqrt(dot(cj, cj));
    for (int attempt = 0;; ++attempt) {
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < j; ++i) axpy(-dot(q.col(i), cj), q.col(i), cj);
      const double norm = std::sqrt(dot(cj, cj));
      if (norm > 1e-10 * before && norm > 1e-300) {
        for (double& v : cj) v /= norm;
        break;
      }
      if (attempt > 8) throw Error("orthonormalize: cannot complete basis");
      for (double& v : cj) v = rng.normal();
      before = std::sqrt(dot(cj, cj));
    }
  }
}

// One-sided Jacobi: rotates columns of b (and q alongside) until mutually orthogonal.
inline void one_sided_jacobi(DenseMatrix& b, DenseMatrix& q) {
  const std::size_t m = b.cols;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        auto bi = b.col(i), bj = b.col(j);
        const double alpha = dot(bi, bi), beta = dot(bj, bj), gamma = dot(bi, bj);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
        for (std::size_t r = 0; r < b.rows; ++r) {
          const double x = bi[r], y = bj[r];
          bi[r] = c * x - s * y;
          bj[r] = s * x + c * y;
        }
        auto qi = q.col(i), qj = q.col(j);
        for (std::size_t r = 0; r < q.rows; ++r) {
          const double x = qi[r], y = qj[r];
          qi[r] = c * x - s * y;
          qj[r] = s * x + c * y;
        }
      }
    }
    if (!rotated) return;
  }
}

// Reorders columns of b and q by descending norm of b's columns (stable).
inline void sort_by_norm(DenseMatrix& b, DenseMatrix& q) {
  std::vector<double> norms(b.cols);
  for (std::size_t j = 0; j < b.cols; ++j) norms[j] = dot(b.col(j), b.col(j));
  std::vector<std::size_t> order(b.cols);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return norms[x] > norms[y]; });
  DenseMatrix nb(b.rows, b.cols), nq(q.rows, q.cols);
  for (std::size_t j = 0; j < b.cols; ++j) {
    std::copy(b.col(order[j]).begin(), b.col(order[j]).end(), nb.col(j).begin());
    std::copy(q.col(order[j]).begin(), q.col(order[j]).end(), nq.col(j).begin());
  }
  b = std::move(nb);
  q = std::move(nq);
}

// || Q_new - P_old Q_new ||_F over the first k columns.
inline double subspace_change(const DenseMatrix& prev, const DenseMatrix& cur, std::size_t k) {
  double total = 0.0;
  std::vector<double> r(cur.rows);
  for (std::size_t j = 0; j < k; ++j) {
    auto c = cur.col(j);
    std::copy(c.begin(), c.end(), r.begin());
    for (std::size_t i = 0; i < k; ++i) axpy(-dot(prev.col(i), c), prev.col(i), r);
    total += dot(r, r);
  }
  return std::sqrt(total);
}

}  // namespace detail

/// Top-k singular triplets by block orthogonal iteration on W^T W with a
/// Jacobi rotation of the block each step. Singular values below
/// tol * sigma_1 are dropped, so the returned k may be smaller than requested.
/// Each right vector's largest-magnitude entry is positive.
inline LowRankBasis svd_lowrank(const SparseMatrix& w, std::size_t k, const SvdOptions& opt = {}) {
  if (k < 1) throw InvalidArgument("svd_lowrank: k must be >= 1");
  if (w.nnz() == 0) throw InvalidArgument("svd_lowrank: matrix is all zero");
  const std::size_t n = w.cols;
  if (k > std::min(w.rows, n)) {
    log::warn("svd_lowrank: k=" + std::to_string(k) + " clamped to " + std::to_string(std::min(w.rows, n)));
    k = std::min(w.rows, n);
  }
  const std::size_t block = std::min(n, k + opt.oversample);
  Rng rng = Rng::substream(opt.seed, "svd-init");
  DenseMatrix q(n, block);
  for (double& v : q.data) v = rng.normal();
  detail::orthonormalize(q, rng);

  LowRankBasis out;
  DenseMatrix b, prev;
  out.converged = false;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    b = w.times(q);
    detail::one_sided_jacobi(b, q);
    detail::sort_by_norm(b, q);
    out.iterations = it;
    if (block == n) {
      out.converged = true;  // the block spans the whole space
      break;
    }
    // Directions below the truncation level are refilled randomly each step,
    // so only the retained ones are tracked.
    std::size_t tracked = 0;
    const double top = detail::dot(b.col(0), b.col(0));
    while (tracked < k && detail::dot(b.col(tracked), b.col(tracked)) >= opt.tol * opt.tol * top &&
           top > 0.0)
      ++tracked;
    if (it > 1 && detail::subspace_change(prev, q, tracked) < opt.convergence) {
      out.converged = true;
      break;
    }
    prev = q;
    q = w.transpose_times(b);
    detail::orthonormalize(q, rng);
  }
  if (!out.converged)
    log::warn("svd_lowrank: subspace not converged after " + std::to_string(opt.max_iterations) + " iterations");

  std::vector<double> sigma(k);
  for (std::size_t j = 0; j < k; ++j) sigma[j] = std::sqrt(detail::dot(b.col(j), b.col(j)));
  std::size_t keep = 0;
  while (keep < k && sigma[keep] > 0.0 && sigma[keep] >= opt.tol * sigma[0]) ++keep;
  if (keep == 0) throw InvalidArgument("svd_lowrank: matrix is numerically zero");
  out.k = keep;
  out.singular_values.assign(sigma.begin(), sigma.begin() + static_cast<std::ptrdiff_t>(keep));
  out.left = DenseMatrix(w.rows, keep);
  out.right = DenseMatrix(n, keep);
  for (std::size_t j = 0; j < keep; ++j) {
    auto v = q.col(j);
    auto u = b.col(j);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    const double sign = v[arg] < 0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.right(i, j) = sign * v[i];
    for (std::size_t i = 0; i < w.rows; ++i) out.left(i, j) = sign * u[i] / sigma[j];
  }
  return out;
}

/// Sigma^-1 V^T f.
inline std::vector<double> community_features(const LowRankBasis& basis, std::span<const double> f) {
  if (f.size() != basis.right.rows)
    throw InvalidArgument("community_features: vector length " + std::to_string(f.size()) +
                          " != " + std::to_string(basis.right.rows));
  std::vector<double> out(basis.k);
  for (std::size_t j = 0; j < basis.k; ++j)
    out[j] = detail::dot(basis.right.col(j), f) / basis.singular_values[j];
  return out;
}

/// Same, for a binary vector given by its support.
inline std::vector<double> community_features_sparse(const LowRankBasis& basis,
                                                     std::span<const std::size_t> support) {
  std::vector<double> out(basis.k, 0.0);
  for (std::size_t j = 0; j < basis.k; ++j) {
    auto v = basis.right.col(j);
    double s = 0.0;
    for (std::size_t i : support) s += v[i];
    out[j] = s / basis.singular_values[j];
  }
  return out;
}

}  // namespace recipenet

#endif  // RECIPENET_SVD_HPP_
