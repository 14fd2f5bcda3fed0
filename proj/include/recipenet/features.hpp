// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_FEATURES_HPP_
#define RECIPENET_FEATURES_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recipenet/centrality.hpp"
#include "recipenet/corpus.hpp"
#include "recipenet/error.hpp"
#include "recipenet/gbt.hpp"
#include "recipenet/ingredient_parser.hpp"
#include "recipenet/networks.hpp"
#include "recipenet/pair_dataset.hpp"
#include "recipenet/stats.hpp"
#include "recipenet/svd.hpp"
#include "recipenet/text.hpp"

namespace recipenet {

enum class FeatureGroup { Baseline, FullIngredients, Nutrition, NetPosition, NetCommunity };

inline constexpr std::array<FeatureGroup, 5> kFeatureGroups = {
    FeatureGroup::Baseline, FeatureGroup::FullIngredients, FeatureGroup::Nutrition,
    FeatureGroup::NetPosition, FeatureGroup::NetCommunity};

inline std::string_view to_string(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::Baseline: return "baseline";
    case FeatureGroup::FullIngredients: return "full_ingredients";
    case FeatureGroup::Nutrition: return "nutrition";
    case FeatureGroup::NetPosition: return "network_position";
    case FeatureGroup::NetCommunity: return "network_community";
  }
  return "?";
}

inline FeatureGroup parse_feature_group(std::string_view s) {
  for (FeatureGroup g : kFeatureGroups)
    if (to_string(g) == s) return g;
  throw InvalidArgument("unknown feature group '" + std::string(s) + "'");
}

/// Named feature values, each tagged with its group.
struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<FeatureGroup> groups;

  std::size_t size() const { return values.size(); }

  void add(std::string name, double value, FeatureGroup group) {
    names.push_back(std::move(name));
    values.push_back(value);
    groups.push_back(group);
  }

  void append(const FeatureVector& o, std::string_view prefix = {}) {
    for (std::size_t i = 0; i < o.size(); ++i) add(std::string(prefix) + o.names[i], o.values[i], o.groups[i]);
  }
};

/// Method indicators in lexicon name order, then prep/cook minutes and servings.
inline FeatureVector baseline_features(const Recipe& recipe, const MethodLexicon& lexicon) {
  FeatureVector v;
  const auto found = extract_methods(recipe.directions, lexicon);
  for (const auto& m : lexicon.names())
    v.add("method." + m, found.contains(m) ? 1.0 : 0.0, FeatureGroup::Baseline);
  v.add("prep_minutes", recipe.prep_minutes, FeatureGroup::Baseline);
  v.add("cook_minutes", recipe.cook_minutes, FeatureGroup::Baseline);
  v.add("servings", recipe.servings, FeatureGroup::Baseline);
  return v;
}

/// The eight nutrient values (0 when absent), then one missing flag per nutrient.
inline FeatureVector nutrition_features(const Recipe& recipe) {
  FeatureVector v;
  for (auto k : kNutrients) {
    auto it = recipe.nutrition.find(std::string(k));
    v.add("nutrition." + std::string(k), it == recipe.nutrition.end() ? 0.0 : it->second, FeatureGroup::Nutrition);
  }
  for (auto k : kNutrients)
    v.add("nutrition." + std::string(k) + "_missing", recipe.nutrition.contains(std::string(k)) ? 0.0 : 1.0,
          FeatureGroup::Nutrition);
  return v;
}

inline FeatureVector full_ingredient_features(std::span<const std::size_t> set,
                                              std::span<const std::string> ingredient_names) {
  FeatureVector v;
  std::vector<double> f(ingredient_names.size(), 0.0);
  for (std::size_t i : set) f.at(i) = 1.0;
  for (std::size_t i = 0; i < f.size(); ++i) v.add("ingredient." + ingredient_names[i], f[i], FeatureGroup::FullIngredients);
  return v;
}

/// g^T f.
inline double position_feature(std::span<const double> g, std::span<const double> f) {
  if (g.size() != f.size())
    throw InvalidArgument("position_feature: dimension " + std::to_string(g.size()) + " != " + std::to_string(f.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * f[i];
  return s;
}

inline double position_feature(std::span<const double> g, std::span<const std::size_t> support) {
  double s = 0.0;
  for (std::size_t i : support) s += g[i];
  return s;
}

/// What the feature builder needs from one ingredient network.
struct NetworkSummary {
  NetworkKind kind = NetworkKind::Cooccurrence;
  std::array<std::vector<double>, kCentralities.size()> centrality;
  LowRankBasis basis;
  bool has_basis = false;  // false when the network has no edges
};

inline NetworkSummary summarize_network(const WeightedDiGraph& g, std::size_t k, const SvdOptions& svd,
                                        const CentralityOptions& opt = {}) {
  NetworkSummary s;
  s.kind = g.kind();
  for (std::size_t c = 0; c < kCentralities.size(); ++c) s.centrality[c] = centrality(g, kCentralities[c], opt);
  if (!g.empty()) {
    s.basis = svd_lowrank(SparseMatrix::from_graph(g), k, svd);
    s.has_basis = true;
  }
  return s;
}

inline NetworkSummary summarize_network(const WeightedDiGraph& g, std::size_t k, std::uint64_t seed,
                                        const CentralityOptions& opt = {}) {
  return summarize_network(g, k, SvdOptions{.seed = seed}, opt);
}

struct FeatureContext {
  MethodLexicon methods;
  std::vector<std::string> ingredient_names;
  std::vector<NetworkSummary> networks;
  /// Community columns per network; dimensions a basis lacks are zero.
  std::size_t community_k = 50;
};

inline FeatureVector network_position_features(const FeatureContext& ctx, std::span<const std::size_t> set) {
  FeatureVector v;
  for (const auto& n : ctx.networks)
    for (std::size_t c = 0; c < kCentralities.size(); ++c)
      v.add("position." + std::string(to_string(n.kind)) + "." + std::string(to_string(kCentralities[c])),
            position_feature(n.centrality[c], set), FeatureGroup::NetPosition);
  return v;
}

inline FeatureVector network_community_features(const FeatureContext& ctx, std::span<const std::size_t> set) {
  FeatureVector v;
  for (const auto& n : ctx.networks) {
    std::vector<double> f;
    if (n.has_basis) f = community_features_sparse(n.basis, set);
    f.resize(ctx.community_k, 0.0);
    for (std::size_t j = 0; j < ctx.community_k; ++j)
      v.add("community." + std::string(to_string(n.kind)) + "." + std::to_string(j), f[j], FeatureGroup::NetCommunity);
  }
  return v;
}

inline FeatureVector recipe_features(const FeatureContext& ctx, const Recipe& recipe,
                                     std::span<const std::size_t> set, std::span<const FeatureGroup> groups) {
  FeatureVector v;
  for (FeatureGroup g : kFeatureGroups) {
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) continue;
    switch (g) {
      case FeatureGroup::Baseline: v.append(baseline_features(recipe, ctx.methods)); break;
      case FeatureGroup::FullIngredients: v.append(full_ingredient_features(set, ctx.ingredient_names)); break;
      case FeatureGroup::Nutrition: v.append(nutrition_features(recipe)); break;
      case FeatureGroup::NetPosition: v.append(network_position_features(ctx, set)); break;
      case FeatureGroup::NetCommunity: v.append(network_community_features(ctx, set)); break;
    }
  }
  return v;
}

/// Both recipes' features side by side, prefixed "x." and "y.".
inline FeatureVector pair_features(const FeatureContext& ctx, const Recipe& x, std::span<const std::size_t> set_x,
                                   const Recipe& y, std::span<const std::size_t> set_y,
                                   std::span<const FeatureGroup> groups) {
  FeatureVector v;
  v.append(recipe_features(ctx, x, set_x, groups), "x.");
  v.append(recipe_features(ctx, y, set_y, groups), "y.");
  return v;
}

/// Every group's features for every recipe, computed once; conditions pick
/// column subsets.
class FeatureTable {
 public:
  static FeatureTable build(const FeatureContext& ctx, const Corpus& corpus, const RecipeSets& sets) {
    if (sets.size() != corpus.recipes().size()) throw InvalidArgument("FeatureTable: recipe set count mismatch");
    FeatureTable t;
    t.rows_ = sets.size();
    for (std::size_t r = 0; r < t.rows_; ++r) {
      auto v = recipe_features(ctx, corpus.recipe(r), sets[r], kFeatureGroups);
      if (r == 0) {
        t.names_ = v.names;
        t.groups_ = v.groups;
        t.values_.reserve(t.rows_ * v.size());
      }
      t.values_.insert(t.values_.end(), v.values.begin(), v.values.end());
    }
    t.community_k_ = ctx.community_k;
    return t;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return names_.size(); }
  std::size_t community_k() const { return community_k_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<FeatureGroup>& groups() const { return groups_; }
  double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }

  /// Columns of the chosen groups, keeping only the first `community_k`
  /// community dimensions of each network.
  std::vector<std::size_t> select(std::span<const FeatureGroup> groups, std::size_t community_k) const {
    if (community_k > community_k_)
      throw InvalidArgument("FeatureTable: community_k " + std::to_string(community_k) + " > built " +
                            std::to_string(community_k_));
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < names_.size(); ++c) {
      if (std::find(groups.begin(), groups.end(), groups_[c]) == groups.end()) continue;
      if (groups_[c] == FeatureGroup::NetCommunity) {
        const auto dot = names_[c].rfind('.');
        if (std::stoul(names_[c].substr(dot + 1)) >= community_k) continue;
      }
      cols.push_back(c);
    }
    return cols;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t community_k_ = 0;
  std::vector<std::string> names_;
  std::vector<FeatureGroup> groups_;
  std::vector<double> values_;
};

/// One row per pair over the chosen columns. Unswapped rows put the preferred
/// recipe on the x side with label +1; swapped rows exchange sides, label -1.
inline Dataset build_pair_dataset(const FeatureTable& table, std::span<const RecipePair> pairs,
                                  std::span<const std::size_t> cols, std::span<const char> swapped) {
  if (swapped.size() != pairs.size()) throw InvalidArgument("build_pair_dataset: orientation count mismatch");
  Dataset d;
  d.rows = pairs.size();
  d.cols = 2 * cols.size();
  for (const char* side : {"x.", "y."})
    for (std::size_t c : cols) d.feature_names.push_back(side + table.names()[c]);
  d.x.reserve(d.rows * d.cols);
  d.y.reserve(d.rows);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::size_t x = pairs[i].recipe_hi, y = pairs[i].recipe_lo;
    if (swapped[i]) std::swap(x, y);
    for (std::size_t c : cols) d.x.push_back(table.at(x, c));
    for (std::size_t c : cols) d.x.push_back(table.at(y, c));
    d.y.push_back(swapped[i] ? -1 : 1);
  }
  return d;
}

/// Group of a pair-dataset column name ("x.<feature>" or "y.<feature>").
inline FeatureGroup group_of_feature(std::string_view name) {
  if (name.size() > 2 && name[1] == '.' && (name[0] == 'x' || name[0] == 'y')) name.remove_prefix(2);
  if (text::starts_with(name, "ingredient.")) return FeatureGroup::FullIngredients;
  if (text::starts_with(name, "nutrition.")) return FeatureGroup::Nutrition;
  if (text::starts_with(name, "position.")) return FeatureGroup::NetPosition;
  if (text::starts_with(name, "community.")) return FeatureGroup::NetCommunity;
  return FeatureGroup::Baseline;
}

/// Header of feature names plus "label", then one tab-separated row per pair.
inline void write_feature_matrix(std::ostream& out, const Dataset& d) {
  for (const auto& n : d.feature_names) out << n << '\t';
  out << "label\n";
  for (std::size_t r = 0; r < d.rows; ++r) {
    for (double v : d.row(r)) out << text::format_double(v) << '\t';
    out << d.y[r] << '\n';
  }
}

struct Condition {
  std::string name;
  std::vector<FeatureGroup> groups;
};

/// The five experimental feature-set conditions, in report order.
inline const std::vector<Condition>& conditions() {
  using G = FeatureGroup;
  static const std::vector<Condition> c = {
      {"baseline", {G::Baseline}},
      {"full_ingredients", {G::Baseline, G::FullIngredients}},
      {"nutrition", {G::Baseline, G::Nutrition}},
      {"networks", {G::Baseline, G::NetPosition, G::NetCommunity}},
      {"combined", {G::Baseline, G::Nutrition, G::NetPosition, G::NetCommunity}},
  };
  return c;
}

inline const Condition& find_condition(std::string_view name) {
  for (const auto& c : conditions())
    if (c.name == name) return c;
  throw InvalidArgument("unknown condition '" + std::string(name) + "'");
}

struct PmiRatingCorrelation {
  std::optional<double> min, avg, max;  // nullopt: zero variance
  std::size_t recipes = 0;
};

/// Correlation of each recipe's min / mean / max pairwise PMI with its average
/// rating, over recipes with two or more ingredients, at least one defined
/// pair and at least one review.
inline PmiRatingCorrelation pmi_rating_correlation(const Corpus& corpus, const RecipeSets& sets,
                                                   const CooccurrenceCounts& counts) {
  if (sets.size() != corpus.recipes().size()) throw InvalidArgument("pmi_rating_correlation: recipe set count mismatch");
  std::vector<double> mins, avgs, maxs, ratings;
  for (std::size_t r = 0; r < sets.size(); ++r) {
    const auto& s = sets[r];
    if (s.size() < 2) continue;
    auto rating = corpus.average_rating(r);
    if (!rating) continue;
    double lo = 0, hi = 0, sum = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        auto v = pmi(s[i], s[j], counts);
        if (!v) continue;
        lo = n ? std::min(lo, *v) : *v;
        hi = n ? std::max(hi, *v) : *v;
        sum += *v;
        ++n;
      }
    if (n == 0) continue;
    mins.push_back(lo);
    maxs.push_back(hi);
    avgs.push_back(sum / static_cast<double>(n));
    ratings.push_back(*rating);
  }
  if (ratings.size() < 3) throw Undefined("pmi_rating_correlation: fewer than 3 qualifying recipes");
  return {stats::pearson(mins, ratings), stats::pearson(avgs, ratings), stats::pearson(maxs, ratings), ratings.size()};
}

}  // namespace recipenet

#endif  // RECIPENET_FEATURES_HPP_
