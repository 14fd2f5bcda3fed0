// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_GBT_HPP_
#define RECIPENET_GBT_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "recipenet/error.hpp"
#include "recipenet/log.hpp"
#include "recipenet/rng.hpp"

namespace recipenet {

struct GbtConfig {
  int n_trees = 200;
  int max_leaves = 8;
  double shrinkage = 0.1;
  double subsample_fraction = 0.5;
  int min_samples_leaf = 5;
  std::uint64_t seed = 0;

  void validate() const {
    if (n_trees < 0) throw InvalidArgument("gbt: n_trees must be >= 0");
    if (max_leaves < 2) throw InvalidArgument("gbt: max_leaves must be >= 2");
    if (!(shrinkage > 0.0 && shrinkage <= 1.0)) throw InvalidArgument("gbt: shrinkage must be in (0,1]");
    if (!(subsample_fraction > 0.0 && subsample_fraction <= 1.0))
      throw InvalidArgument("gbt: subsample_fraction must be in (0,1]");
    if (min_samples_leaf < 1) throw InvalidArgument("gbt: min_samples_leaf must be >= 1");
  }

  bool operator==(const GbtConfig&) const = default;
};

/// Row-major feature matrix with +1/-1 labels.
struct Dataset {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> x;
  std::vector<int> y;
  std::vector<std::string> feature_names;

  double at(std::size_t r, std::size_t c) const { return x[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {x.data() + r * cols, cols}; }

  void check() const {
    if (x.size() != rows * cols) throw InvalidArgument("dataset: value count mismatch");
    if (y.size() != rows) throw InvalidArgument("dataset: label count mismatch");
    if (!feature_names.empty() && feature_names.size() != cols)
      throw InvalidArgument("dataset: feature name count mismatch");
    for (int v : y)
      if (v != 1 && v != -1) throw InvalidArgument("dataset: labels must be +1 or -1");
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!std::isfinite(x[i]))
        throw InvalidArgument("dataset: non-finite value at row " + std::to_string(i / cols) +
                              ", column " + std::to_string(i % cols));
  }

  Dataset subset(std::span<const std::size_t> idx) const {
    Dataset d;
    d.rows = idx.size();
    d.cols = cols;
    d.feature_names = feature_names;
    d.x.reserve(d.rows * cols);
    d.y.reserve(d.rows);
    for (std::size_t r : idx) {
      auto rr = row(r);
      d.x.insert(d.x.end(), rr.begin(), rr.end());
      d.y.push_back(y.at(r));
    }
    return d;
  }
};

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

/// Binary regression tree; a row goes left when x[feature] <= threshold.
struct Tree {
  std::vector<TreeNode> nodes;

  int leaf_of(std::span<const double> row) const {
    int i = 0;
    while (!nodes[static_cast<std::size_t>(i)].is_leaf()) {
      const auto& n = nodes[static_cast<std::size_t>(i)];
      i = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return i;
  }

  double predict(std::span<const double> row) const {
    return nodes[static_cast<std::size_t>(leaf_of(row))].value;
  }

  std::size_t leaves() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](auto& n) { return n.is_leaf(); }));
  }

  bool operator==(const Tree&) const = default;
};

struct BoostedEnsemble {
  GbtConfig config;
  std::vector<std::string> feature_names;
  std::size_t n_features = 0;
  double initial_score = 0.0;
  std::vector<Tree> trees;
  /// Sum of split improvements (squared-error reductions) per feature.
  std::vector<double> squared_improvement;

  double score(std::span<const double> row) const {
    if (row.size() != n_features)
      throw InvalidArgument("predict: feature length " + std::to_string(row.size()) + " != " +
                            std::to_string(n_features));
    double s = 0.0;
    for (const auto& t : trees) s += t.predict(row);
    return initial_score + config.shrinkage * s;
  }

  int predict(std::span<const double> row) const { return score(row) >= 0.0 ? 1 : -1; }

  std::size_t split_count() const {
    std::size_t n = 0;
    for (const auto& t : trees) n += t.nodes.size() - t.leaves();
    return n;
  }

  bool operator==(const BoostedEnsemble&) const = default;
};

namespace detail {

struct SplitCandidate {
  bool valid = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double improvement = 0.0;
  std::size_t left_count = 0;
};

// Growing state for one tree. `sorted_[j]` holds the in-sample (value, row)
// entries ordered by feature active[j]; every node owns the same [begin, end)
// range in all of them. Columns constant over the training set are left out.
class TreeGrower {
 public:
  struct Entry {
    double value;
    std::uint32_t row;
  };

  TreeGrower(const Dataset& d, const std::vector<std::vector<std::uint32_t>>& presorted,
             const std::vector<std::size_t>& active, const std::vector<char>& in_sample, std::size_t n_in,
             const std::vector<double>& target, int min_leaf)
      : cols_(active.size()), active_(active), target_(target), min_leaf_(static_cast<std::size_t>(min_leaf)) {
    sorted_.resize(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      auto& s = sorted_[j];
      s.reserve(n_in);
      for (std::uint32_t r : presorted[active_[j]])
        if (in_sample[r]) s.push_back({d.at(r, active_[j]), r});
    }
    if (cols_ == 0)
      for (std::uint32_t r = 0; r < d.rows; ++r)
        if (in_sample[r]) rows_.push_back(r);
    go_left_.assign(d.rows, 0);
  }

  SplitCandidate best_split(std::size_t begin, std::size_t end) const {
    SplitCandidate best;
    const std::size_t n = end - begin;
    if (n < 2 * min_leaf_ || cols_ == 0) return best;
    double total = 0.0;
    for (std::size_t k = begin; k < end; ++k) total += target_[sorted_[0][k].row];
    const double parent = total * total / static_cast<double>(n);
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& s = sorted_[j];
      if (!(s[begin].value < s[end - 1].value)) continue;
      double left = 0.0;
      for (std::size_t k = begin; k + 1 < end; ++k) {
        left += target_[s[k].row];
        const std::size_t nl = k - begin + 1, nr = n - nl;
        if (nl < min_leaf_) continue;
        if (nr < min_leaf_) break;
        const double v = s[k].value, vn = s[k + 1].value;
        if (!(v < vn)) continue;
        const double right = total - left;
        const double gain =
            left * left / static_cast<double>(nl) + right * right / static_cast<double>(nr) - parent;
        if (!best.valid || gain > best.improvement) {
          double thr = v + (vn - v) / 2.0;
          if (!(thr >= v && thr < vn)) thr = v;
          best = {true, j, thr, gain, nl};
        }
      }
    }
    if (best.valid && best.improvement < 0.0) best.improvement = 0.0;
    if (best.valid) best.feature = active_[best.feature];
    return best;
  }

  // Reorders [begin, end) in every feature list so the left child comes first.
  void partition(std::size_t begin, std::size_t end, const SplitCandidate& split) {
    const auto j = static_cast<std::size_t>(
        std::lower_bound(active_.begin(), active_.end(), split.feature) - active_.begin());
    const auto& key = sorted_[j];
    for (std::size_t k = begin; k < end; ++k) go_left_[key[k].row] = (k - begin) < split.left_count;
    buffer_.resize(end - begin);
    for (auto& s : sorted_) {
      std::size_t l = begin, r = 0;
      for (std::size_t k = begin; k < end; ++k) {
        if (go_left_[s[k].row])
          s[l++] = s[k];
        else
          buffer_[r++] = s[k];
      }
      std::copy(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(r),
                s.begin() + static_cast<std::ptrdiff_t>(l));
    }
  }

  template <class F>
  void for_rows(std::size_t begin, std::size_t end, F&& f) const {
    for (std::size_t k = begin; k < end; ++k) f(cols_ == 0 ? rows_[k] : sorted_[0][k].row);
  }

  std::size_t size() const { return cols_ == 0 ? rows_.size() : sorted_[0].size(); }

 private:
  std::size_t cols_;
  const std::vector<std::size_t>& active_;
  const std::vector<double>& target_;
  std::size_t min_leaf_;
  std::vector<std::vector<Entry>> sorted_;
  std::vector<char> go_left_;
  std::vector<Entry> buffer_;
  std::vector<std::uint32_t> rows_;  // in-sample rows when no column is active
};

}  // namespace detail

/// Stochastic gradient boosting under exponential loss. Each round fits a
/// least-squares regression tree (best-first, up to max_leaves leaves) to the
/// negative gradient y*exp(-yF) on a subsample, then sets every leaf to the
/// Newton step sum(y w) / sum(w) with w = exp(-yF).
/// `loss_trace`, when given, receives the training loss sum(exp(-yF)) before
/// the first round and after each round.
inline BoostedEnsemble train(const Dataset& data, const GbtConfig& cfg,
                             std::vector<double>* loss_trace = nullptr) {
  cfg.validate();
  data.check();
  if (data.rows < 2 * static_cast<std::size_t>(cfg.min_samples_leaf))
    throw InvalidArgument("train: need at least " + std::to_string(2 * cfg.min_samples_leaf) + " rows");
  if (data.rows > 0xffffffffu) throw InvalidArgument("train: too many rows");

  BoostedEnsemble m;
  m.config = cfg;
  m.feature_names = data.feature_names;
  m.n_features = data.cols;
  m.squared_improvement.assign(data.cols, 0.0);

  const std::size_t n = data.rows;
  std::size_t pos = 0;
  for (int v : data.y) pos += v > 0;
  if (pos == 0 || pos == n) {
    log::warn("train: all labels are equal; the model is the constant prior");
    m.initial_score = pos == n ? 1.0 : -1.0;
    return m;
  }
  m.initial_score = 0.5 * std::log(static_cast<double>(pos) / static_cast<double>(n - pos));

  std::vector<std::vector<std::uint32_t>> presorted(data.cols);
  for (std::size_t f = 0; f < data.cols; ++f) {
    auto& p = presorted[f];
    p.resize(n);
    std::iota(p.begin(), p.end(), 0u);
    std::stable_sort(p.begin(), p.end(), [&](std::uint32_t a, std::uint32_t b) { return data.at(a, f) < data.at(b, f); });
  }

  std::vector<std::size_t> active;
  for (std::size_t f = 0; f < data.cols; ++f)
    if (data.at(presorted[f].front(), f) < data.at(presorted[f].back(), f)) active.push_back(f);

  std::vector<double> score(n, m.initial_score), weight(n), target(n);
  auto loss = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::exp(-data.y[i] * score[i]);
    return s;
  };
  if (loss_trace) loss_trace->assign(1, loss());

  Rng rng = Rng::substream(cfg.seed, "subsample");
  const std::size_t n_in = cfg.subsample_fraction >= 1.0
                               ? n
                               : std::max<std::size_t>(2 * static_cast<std::size_t>(cfg.min_samples_leaf),
                                                       static_cast<std::size_t>(std::llround(cfg.subsample_fraction * static_cast<double>(n))));
  std::vector<std::size_t> perm(n);
  std::vector<char> in_sample(n, 1);

  for (int t = 0; t < cfg.n_trees; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      weight[i] = std::exp(-data.y[i] * score[i]);
      target[i] = data.y[i] * weight[i];
    }
    if (n_in < n) {
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      rng.shuffle(std::span<std::size_t>(perm));
      std::fill(in_sample.begin(), in_sample.end(), 0);
      for (std::size_t k = 0; k < n_in; ++k) in_sample[perm[k]] = 1;
    }
    detail::TreeGrower grower(data, presorted, active, in_sample, n_in, target, cfg.min_samples_leaf);

    struct Open {
      int node;
      std::size_t begin, end;
      detail::SplitCandidate split;
    };
    Tree tree;
    tree.nodes.emplace_back();
    std::vector<Open> open{{0, 0, grower.size(), grower.best_split(0, grower.size())}};
    std::size_t leaves = 1;
    while (leaves < static_cast<std::size_t>(cfg.max_leaves)) {
      std::size_t pick = open.size();
      for (std::size_t k = 0; k < open.size(); ++k) {
        if (!open[k].split.valid || !(open[k].split.improvement > 0.0)) continue;
        if (pick == open.size() || open[k].split.improvement > open[pick].split.improvement) pick = k;
      }
      if (pick == open.size()) break;
      Open o = open[pick];
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
      grower.partition(o.begin, o.end, o.split);
      const int l = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      auto& node = tree.nodes[static_cast<std::size_t>(o.node)];
      node.feature = static_cast<int>(o.split.feature);
      node.threshold = o.split.threshold;
      node.left = l;
      node.right = l + 1;
      m.squared_improvement[o.split.feature] += o.split.improvement;
      const std::size_t mid = o.begin + o.split.left_count;
      open.push_back({l, o.begin, mid, grower.best_split(o.begin, mid)});
      open.push_back({l + 1, mid, o.end, grower.best_split(mid, o.end)});
      ++leaves;
    }
    for (const auto& o : open) {
      double num = 0.0, den = 0.0;
      grower.for_rows(o.begin, o.end, [&](std::uint32_t r) {
        num += target[r];
        den += weight[r];
      });
      tree.nodes[static_cast<std::size_t>(o.node)].value = den > 0.0 ? num / den : 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) score[i] += cfg.shrinkage * tree.predict(data.row(i));
    m.trees.push_back(std::move(tree));
    if (loss_trace) loss_trace->push_back(loss());
  }
  return m;
}

/// Fraction of rows whose predicted label equals the true label.
inline double evaluate(const BoostedEnsemble& m, const Dataset& test) {
  if (test.rows == 0) throw InvalidArgument("evaluate: empty test set");
  test.check();
  std::size_t hit = 0;
  for (std::size_t r = 0; r < test.rows; ++r) hit += m.predict(test.row(r)) == test.y[r];
  return static_cast<double>(hit) / static_cast<double>(test.rows);
}

/// Per-feature sqrt of summed squared improvements, normalized to sum 1.
inline std::vector<double> relative_importance(const BoostedEnsemble& m) {
  std::vector<double> imp(m.squared_improvement.size());
  double total = 0.0;
  for (std::size_t j = 0; j < imp.size(); ++j) {
    imp[j] = std::sqrt(m.squared_improvement[j]);
    total += imp[j];
  }
  if (m.split_count() == 0 || !(total > 0.0)) throw InvalidArgument("relative_importance: model has no splits");
  for (double& v : imp) v /= total;
  return imp;
}

struct TrainTestSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  /// Per row: present the pair with its sides exchanged and the label negated.
  std::vector<char> swapped;
};

/// Seeded shuffle; the first ceil(fraction * n) rows train. Orientation flips
/// are drawn from the same stream.
inline TrainTestSplit split_train_test(std::size_t n_rows, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw InvalidArgument("split_train_test: fraction must be in (0,1)");
  if (n_rows < 3) throw InvalidArgument("split_train_test: need at least 3 rows");
  Rng rng = Rng::substream(seed, "split");
  std::vector<std::size_t> perm(n_rows);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(perm));
  std::size_t n_train = static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(n_rows) - 1e-9));
  n_train = std::clamp<std::size_t>(n_train, 1, n_rows - 1);
  TrainTestSplit s;
  s.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  s.swapped.resize(n_rows);
  for (auto& f : s.swapped) f = static_cast<char>(rng.below(2));
  return s;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline std::string hexfloat(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
  return std::string(buf, r.ptr);
}

inline double parse_hexfloat(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw ParseError("model", line, "bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

inline constexpr int kModelFormatVersion = 1;

inline void save_model(std::ostream& out, const BoostedEnsemble& m) {
  const auto& c = m.config;
  out << "recipenet-gbt " << kModelFormatVersion << '\n';
  out << "config " << c.n_trees << ' ' << c.max_leaves << ' ' << detail::hexfloat(c.shrinkage) << ' '
      << detail::hexfloat(c.subsample_fraction) << ' ' << c.min_samples_leaf << ' ' << c.seed << '\n';
  out << "features " << m.n_features << '\n';
  for (std::size_t j = 0; j < m.n_features; ++j)
    out << (j < m.feature_names.size() ? m.feature_names[j] : "f" + std::to_string(j)) << '\n';
  out << "initial " << detail::hexfloat(m.initial_score) << '\n';
  out << "improvement";
  for (double v : m.squared_improvement) out << ' ' << detail::hexfloat(v);
  out << '\n';
  out << "trees " << m.trees.size() << '\n';
  for (std::size_t t = 0; t < m.trees.size(); ++t) {
    const auto& tree = m.trees[t];
    out << "tree " << t << ' ' << tree.nodes.size() << '\n';
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      const auto& nd = tree.nodes[i];
      if (nd.is_leaf())
        out << i << " leaf " << detail::hexfloat(nd.value) << '\n';
      else
        out << i << " split " << nd.feature << ' ' << detail::hexfloat(nd.threshold) << ' ' << nd.left << ' '
            << nd.right << '\n';
    }
  }
  out << "end\n";
}

inline BoostedEnsemble load_model(std::istream& in) {
  std::size_t lineno = 0;
  std::string line;
  auto next = [&]() -> std::vector<std::string> {
    if (!std::getline(in, line)) throw ParseError("model", lineno + 1, "unexpected end of file");
    ++lineno;
    std::vector<std::string> toks;
    std::istringstream ss(line);
    for (std::string t; ss >> t;) toks.push_back(t);
    return toks;
  };
  auto integer = [&](const std::string& s) {
    long long v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
      throw ParseError("model", lineno, "bad integer '" + s + "'");
    return v;
  };
  auto expect = [&](const std::vector<std::string>& t, const char* tag, std::size_t n) {
    if (t.empty() || t[0] != tag || t.size() != n)
      throw ParseError("model", lineno, std::string("expected '") + tag + "' record");
  };

  BoostedEnsemble m;
  auto t = next();
  expect(t, "recipenet-gbt", 2);
  if (integer(t[1]) != kModelFormatVersion)
    throw ParseError("model", lineno, "unsupported model version " + t[1]);
  t = next();
  expect(t, "config", 7);
  m.config.n_trees = static_cast<int>(integer(t[1]));
  m.config.max_leaves = static_cast<int>(integer(t[2]));
  m.config.shrinkage = detail::parse_hexfloat(t[3], lineno);
  m.config.subsample_fraction = detail::parse_hexfloat(t[4], lineno);
  m.config.min_samples_leaf = static_cast<int>(integer(t[5]));
  {
    std::uint64_t seed = 0;
    auto r = std::from_chars(t[6].data(), t[6].data() + t[6].size(), seed);
    if (r.ec != std::errc()) throw ParseError("model", lineno, "bad seed");
    m.config.seed = seed;
  }
  t = next();
  expect(t, "features", 2);
  m.n_features = static_cast<std::size_t>(integer(t[1]));
  for (std::size_t j = 0; j < m.n_features; ++j) {
    if (!std::getline(in, line)) throw ParseError("model", lineno + 1, "missing feature name");
    ++lineno;
    m.feature_names.push_back(line);
  }
  t = next();
  expect(t, "initial", 2);
  m.initial_score = detail::parse_hexfloat(t[1], lineno);
  t = next();
  expect(t, "improvement", m.n_features + 1);
  for (std::size_t j = 0; j < m.n_features; ++j) m.squared_improvement.push_back(detail::parse_hexfloat(t[j + 1], lineno));
  t = next();
  expect(t, "trees", 2);
  const auto n_trees = integer(t[1]);
  for (long long k = 0; k < n_trees; ++k) {
    t = next();
    expect(t, "tree", 3);
    Tree tree;
    const auto n_nodes = integer(t[2]);
    for (long long i = 0; i < n_nodes; ++i) {
      t = next();
      if (t.size() < 2 || integer(t[0]) != i) throw ParseError("model", lineno, "node out of sequence");
      TreeNode nd;
      if (t[1] == "leaf" && t.size() == 3) {
        nd.value = detail::parse_hexfloat(t[2], lineno);
      } else if (t[1] == "split" && t.size() == 6) {
        nd.feature = static_cast<int>(integer(t[2]));
        nd.threshold = detail::parse_hexfloat(t[3], lineno);
        nd.left = static_cast<int>(integer(t[4]));
        nd.right = static_cast<int>(integer(t[5]));
        if (nd.feature < 0 || static_cast<std::size_t>(nd.feature) >= m.n_features || nd.left <= i ||
            nd.right <= i || nd.left >= n_nodes || nd.right >= n_nodes)
          throw ParseError("model", lineno, "invalid split node");
      } else {
        throw ParseError("model", lineno, "bad node record");
      }
      tree.nodes.push_back(nd);
    }
    m.trees.push_back(std::move(tree));
  }
  t = next();
  expect(t, "end", 1);
  return m;
}

}  // namespace recipenet

#endif  // RECIPENET_GBT_HPP_
