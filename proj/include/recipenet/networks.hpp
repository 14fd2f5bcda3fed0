// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_NETWORKS_HPP_
#define RECIPENET_NETWORKS_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recipenet/error.hpp"
#include "recipenet/ingredient_parser.hpp"
#include "recipenet/review_miner.hpp"
#include "recipenet/stats.hpp"

namespace recipenet {

enum class NetworkKind { Cooccurrence, Complement, Substitute, Preference };

inline std::string_view to_string(NetworkKind k) {
  switch (k) {
    case NetworkKind::Cooccurrence: return "cooccurrence";
    case NetworkKind::Complement: return "complement";
    case NetworkKind::Substitute: return "substitute";
    case NetworkKind::Preference: return "preference";
  }
  return "?";
}

/// Directed weighted graph over vocabulary indices. Undirected networks store
/// both orientations with equal weight.
class WeightedDiGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  WeightedDiGraph() = default;
  WeightedDiGraph(NetworkKind kind, std::vector<std::string> nodes)
      : kind_(kind), nodes_(std::move(nodes)) {}

  NetworkKind kind() const { return kind_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& node(std::size_t i) const { return nodes_.at(i); }

  void set_edge(std::size_t a, std::size_t b, double w) {
    if (a == b) throw InvalidArgument("self-loop on '" + nodes_.at(a) + "'");
    if (a >= size() || b >= size()) throw InvalidArgument("edge endpoint out of range");
    if (!std::isfinite(w)) throw InvalidArgument("non-finite edge weight");
    edges_[{a, b}] = w;
  }

  void set_symmetric(std::size_t a, std::size_t b, double w) {
    set_edge(a, b, w);
    set_edge(b, a, w);
  }

  void remove_edge(std::size_t a, std::size_t b) { edges_.erase({a, b}); }

  std::optional<double> weight(std::size_t a, std::size_t b) const {
    auto it = edges_.find({a, b});
    if (it == edges_.end()) return std::nullopt;
    return it->second;
  }

  bool has_edge(std::size_t a, std::size_t b) const { return edges_.count({a, b}) > 0; }
  const std::map<Edge, double>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  std::vector<std::vector<std::pair<std::size_t, double>>> out_adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(size());
    for (const auto& [e, w] : edges_) adj[e.first].emplace_back(e.second, w);
    return adj;
  }

  /// Row-major |V|x|V| weight matrix; absent edges are 0.
  std::vector<double> dense() const {
    std::vector<double> m(size() * size(), 0.0);
    for (const auto& [e, w] : edges_) m[e.first * size() + e.second] = w;
    return m;
  }

  bool is_symmetric() const {
    for (const auto& [e, w] : edges_) {
      auto r = weight(e.second, e.first);
      if (!r || *r != w) return false;
    }
    return true;
  }

  bool operator==(const WeightedDiGraph&) const = default;

 private:
  NetworkKind kind_ = NetworkKind::Cooccurrence;
  std::vector<std::string> nodes_;
  std::map<Edge, double> edges_;
};

// ---------------------------------------------------------------------------
// Co-occurrence statistics

/// Recipe-presence counts: single and joint, over one set of recipes.
struct CooccurrenceCounts {
  std::size_t n_recipes = 0;
  std::size_t n_ingredients = 0;
  std::vector<int> presence;
  std::vector<int> joint;  // row-major, symmetric, zero diagonal

  int pair(std::size_t a, std::size_t b) const { return joint[a * n_ingredients + b]; }
  double p(std::size_t a) const { return static_cast<double>(presence.at(a)) / n_recipes; }
  double p(std::size_t a, std::size_t b) const { return static_cast<double>(pair(a, b)) / n_recipes; }

  static CooccurrenceCounts from(const RecipeSets& sets, std::size_t n_ingredients) {
    CooccurrenceCounts c;
    c.n_recipes = sets.size();
    c.n_ingredients = n_ingredients;
    c.presence.assign(n_ingredients, 0);
    c.joint.assign(n_ingredients * n_ingredients, 0);
    for (const auto& s : sets) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= n_ingredients) throw InvalidArgument("ingredient index out of range");
        if (i > 0 && s[i] <= s[i - 1]) throw InvalidArgument("recipe set not strictly sorted");
        ++c.presence[s[i]];
        for (std::size_t j = 0; j < i; ++j) {
          ++c.joint[s[i] * n_ingredients + s[j]];
          ++c.joint[s[j] * n_ingredients + s[i]];
        }
      }
    }
    return c;
  }
};

/// Natural-log PMI of recipe-presence probabilities; nullopt when any of
/// p(a), p(b), p(a,b) is zero.
inline std::optional<double> pmi(std::size_t a, std::size_t b, const CooccurrenceCounts& c) {
  if (a == b) throw InvalidArgument("pmi of an ingredient with itself");
  const int ca = c.presence.at(a), cb = c.presence.at(b), cab = c.pair(a, b);
  if (ca == 0 || cb == 0 || cab == 0) return std::nullopt;
  // ln( (cab/N) / ((ca/N)(cb/N)) ) = ln( cab*N / (ca*cb) )
  return std::log(static_cast<double>(cab) * static_cast<double>(c.n_recipes) /
                  (static_cast<double>(ca) * static_cast<double>(cb)));
}

inline WeightedDiGraph build_cooccurrence(const CooccurrenceCounts& c, std::vector<std::string> names) {
  if (names.size() != c.n_ingredients) throw InvalidArgument("build_cooccurrence: name count mismatch");
  WeightedDiGraph g(NetworkKind::Cooccurrence, std::move(names));
  for (std::size_t a = 0; a < c.n_ingredients; ++a)
    for (std::size_t b = a + 1; b < c.n_ingredients; ++b)
      if (int n = c.pair(a, b); n > 0) g.set_symmetric(a, b, n);
  return g;
}

inline WeightedDiGraph build_cooccurrence(const RecipeSets& sets, const Vocabulary& vocab) {
  return build_cooccurrence(CooccurrenceCounts::from(sets, vocab.size()), vocab.names());
}

struct ComplementConfig {
  double pmi_threshold = 0.0;
  int min_cooccurrence = 5;
};

/// Symmetric PMI edges for pairs co-occurring at least `min_cooccurrence`
/// times with PMI >= threshold.
inline WeightedDiGraph build_complement(const CooccurrenceCounts& c, std::vector<std::string> names,
                                        const ComplementConfig& cfg = {}) {
  if (names.size() != c.n_ingredients) throw InvalidArgument("build_complement: name count mismatch");
  if (cfg.min_cooccurrence < 1) throw InvalidArgument("min_cooccurrence must be >= 1");
  WeightedDiGraph g(NetworkKind::Complement, std::move(names));
  for (std::size_t a = 0; a < c.n_ingredients; ++a) {
    for (std::size_t b = a + 1; b < c.n_ingredients; ++b) {
      if (c.pair(a, b) < cfg.min_cooccurrence) continue;
      auto v = pmi(a, b, c);
      if (v && *v >= cfg.pmi_threshold) g.set_symmetric(a, b, *v);
    }
  }
  return g;
}

inline WeightedDiGraph build_complement(const RecipeSets& sets, const Vocabulary& vocab,
                                        const ComplementConfig& cfg = {}) {
  return build_complement(CooccurrenceCounts::from(sets, vocab.size()), vocab.names(), cfg);
}

/// Raw substitution counts c(a->b) keyed by vocabulary index.
inline std::map<WeightedDiGraph::Edge, int> substitution_counts(
    std::span<const ModificationEvent> events, const Vocabulary& vocab) {
  std::map<WeightedDiGraph::Edge, int> counts;
  for (const auto& e : events) {
    if (e.kind != ModKind::Substitute || !e.ingredient_b) continue;
    auto a = vocab.find(e.ingredient_a), b = vocab.find(*e.ingredient_b);
    if (!a || !b || *a == *b) continue;
    ++counts[{*a, *b}];
  }
  return counts;
}

/// p(b|a) over substitution pairs seen at least `min_count` times.
inline WeightedDiGraph build_substitute(const std::map<WeightedDiGraph::Edge, int>& counts,
                                        std::vector<std::string> names, int min_count = 5) {
  WeightedDiGraph g(NetworkKind::Substitute, std::move(names));
  std::vector<long long> totals(g.size(), 0);
  for (const auto& [e, c] : counts)
    if (c >= min_count) totals.at(e.first) += c;
  for (const auto& [e, c] : counts)
    if (c >= min_count) g.set_edge(e.first, e.second, static_cast<double>(c) / totals[e.first]);
  return g;
}

inline WeightedDiGraph build_substitute(std::span<const ModificationEvent> events,
                                        const Vocabulary& vocab, int min_count = 5) {
  return build_substitute(substitution_counts(events, vocab), vocab.names(), min_count);
}

/// An ordered recipe pair: `hi` was rated above `lo`.
struct RatedPair {
  std::size_t hi;
  std::size_t lo;
};

/// Directed preference network. Each rated pair adds one count to every edge
/// from an ingredient only in the lower-rated recipe to an ingredient only in
/// the higher-rated recipe. Edge weight is the directed PMI
/// ln( p(b->a) / (p(b) p(a)) ), with p(b->a) = count / number of rated pairs
/// and p(.) the recipe-presence probabilities.
inline WeightedDiGraph build_preference(const RecipeSets& sets, const CooccurrenceCounts& c,
                                        std::span<const RatedPair> pairs,
                                        std::vector<std::string> names) {
  if (pairs.empty()) throw InvalidArgument("build_preference: no recipe pairs");
  if (names.size() != c.n_ingredients) throw InvalidArgument("build_preference: name count mismatch");
  std::map<WeightedDiGraph::Edge, long long> counts;
  std::vector<std::size_t> only_hi, only_lo;
  for (const auto& p : pairs) {
    const auto& X = sets.at(p.hi);
    const auto& Y = sets.at(p.lo);
    only_hi.clear();
    only_lo.clear();
    std::set_difference(X.begin(), X.end(), Y.begin(), Y.end(), std::back_inserter(only_hi));
    std::set_difference(Y.begin(), Y.end(), X.begin(), X.end(), std::back_inserter(only_lo));
    for (std::size_t b : only_lo)
      for (std::size_t a : only_hi) ++counts[{b, a}];
  }
  WeightedDiGraph g(NetworkKind::Preference, std::move(names));
  const double n_pairs = static_cast<double>(pairs.size());
  for (const auto& [e, n] : counts) {
    const double pf = c.p(e.first), pt = c.p(e.second);
    if (pf <= 0.0 || pt <= 0.0) continue;
    g.set_edge(e.first, e.second, std::log((static_cast<double>(n) / n_pairs) / (pf * pt)));
  }
  return g;
}

/// Pearson correlation of weights over edges present in both graphs.
inline double edge_correlation(const WeightedDiGraph& g1, const WeightedDiGraph& g2) {
  std::vector<double> x, y;
  for (const auto& [e, w] : g1.edges()) {
    if (auto w2 = g2.weight(e.first, e.second)) {
      x.push_back(w);
      y.push_back(*w2);
    }
  }
  if (x.size() < 3)
    throw Undefined("edge_correlation: only " + std::to_string(x.size()) + " common edges");
  auto r = stats::pearson(x, y);
  if (!r) throw Undefined("edge_correlation: zero variance over common edges");
  return *r;
}

/// Number of edges present in both graphs.
inline std::size_t common_edge_count(const WeightedDiGraph& g1, const WeightedDiGraph& g2) {
  std::size_t n = 0;
  for (const auto& [e, w] : g1.edges()) n += g2.has_edge(e.first, e.second);
  return n;
}

inline void write_edge_list(std::ostream& out, const WeightedDiGraph& g) {
  for (const auto& [e, w] : g.edges())
    out << g.node(e.first) << '\t' << g.node(e.second) << '\t' << text::format_double(w) << '\n';
}

}  // namespace recipenet

#endif  // RECIPENET_NETWORKS_HPP_
