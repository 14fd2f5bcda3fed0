// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_PAIR_DATASET_HPP_
#define RECIPENET_PAIR_DATASET_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "recipenet/corpus.hpp"
#include "recipenet/error.hpp"
#include "recipenet/ingredient_parser.hpp"
#include "recipenet/text.hpp"

namespace recipenet {

struct RecipePair {
  std::size_t recipe_hi = 0;
  std::size_t recipe_lo = 0;
  int n_common_raters = 0;
  double majority_fraction = 0.0;
  double similarity = 0.0;

  bool operator==(const RecipePair&) const = default;
};

/// idf_i = ln(N / df_i) over the recipe sets; 0 for ingredients in no recipe.
inline std::vector<double> idf_table(const RecipeSets& sets, std::size_t n_ingredients) {
  if (sets.empty()) throw InvalidArgument("idf_table: no recipes");
  std::vector<int> df(n_ingredients, 0);
  for (const auto& s : sets)
    for (std::size_t i : s) ++df.at(i);
  std::vector<double> idf(n_ingredients, 0.0);
  const double n = static_cast<double>(sets.size());
  for (std::size_t i = 0; i < n_ingredients; ++i)
    if (df[i] > 0) idf[i] = std::log(n / df[i]);
  return idf;
}

/// Cosine of idf-weighted binary ingredient vectors; 0 when either is zero.
inline double idf_cosine(std::span<const std::size_t> a, std::span<const std::size_t> b,
                         std::span<const double> idf) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i : a) na += idf[i] * idf[i];
  for (std::size_t i : b) nb += idf[i] * idf[i];
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      dot += idf[a[i]] * idf[a[i]];
      ++i;
      ++j;
    }
  }
  return std::min(1.0, dot / std::sqrt(na * nb));
}

struct PairConfig {
  double sim_min = 0.2;
  int min_common = 10;
  double majority_min = 0.5;
  int min_user_reviews = 8;
};

/// Ratings with one entry per (user, recipe): the last review in corpus order
/// wins. Returned as user -> sorted (recipe, rating).
inline std::vector<std::vector<std::pair<std::size_t, int>>> deduplicated_ratings(const Corpus& corpus) {
  std::unordered_map<std::string, std::size_t> user_index;
  std::vector<std::map<std::size_t, int>> by_user;
  for (std::size_t r = 0; r < corpus.reviews().size(); ++r) {
    const auto& rev = corpus.review(r);
    auto [it, fresh] = user_index.emplace(rev.user_id, by_user.size());
    if (fresh) by_user.emplace_back();
    by_user[it->second][corpus.recipe_of(r)] = rev.rating;
  }
  std::vector<std::vector<std::pair<std::size_t, int>>> out;
  out.reserve(by_user.size());
  for (auto& m : by_user) out.emplace_back(m.begin(), m.end());
  return out;
}

/// Recipe pairs with idf-cosine similarity > sim_min that at least
/// `min_common` eligible users rated, oriented toward the recipe that a strict
/// majority (> majority_min of all common eligible raters) rated higher.
/// Eligible users rated at least min_user_reviews + 1 distinct recipes.
/// Sorted by (hi id, lo id).
inline std::vector<RecipePair> generate_pairs(const Corpus& corpus, const RecipeSets& sets,
                                              std::span<const double> idf, const PairConfig& cfg = {}) {
  if (sets.size() != corpus.recipes().size()) throw InvalidArgument("generate_pairs: recipe set count mismatch");
  if (cfg.min_common < 1) throw InvalidArgument("generate_pairs: min_common must be >= 1");
  const auto users = deduplicated_ratings(corpus);
  const std::size_t eligible_min = static_cast<std::size_t>(cfg.min_user_reviews) + 1;

  // Common eligible rater tallies per unordered recipe pair (lo index first).
  struct Tally {
    int common = 0;
    int first_wins = 0;
    int second_wins = 0;
  };
  std::unordered_map<std::uint64_t, Tally> tally;
  const std::uint64_t n = sets.size();
  for (const auto& ratings : users) {
    if (ratings.size() < eligible_min) continue;
    for (std::size_t i = 0; i < ratings.size(); ++i) {
      for (std::size_t j = i + 1; j < ratings.size(); ++j) {
        auto& t = tally[ratings[i].first * n + ratings[j].first];
        ++t.common;
        if (ratings[i].second > ratings[j].second)
          ++t.first_wins;
        else if (ratings[j].second > ratings[i].second)
          ++t.second_wins;
      }
    }
  }

  std::vector<RecipePair> out;
  for (const auto& [key, t] : tally) {
    if (t.common < cfg.min_common) continue;
    const std::size_t a = key / n, b = key % n;
    const double sim = idf_cosine(sets[a], sets[b], idf);
    if (!(sim > cfg.sim_min)) continue;
    const double limit = cfg.majority_min * t.common;
    RecipePair p;
    p.n_common_raters = t.common;
    p.similarity = sim;
    if (t.first_wins > limit) {
      p.recipe_hi = a;
      p.recipe_lo = b;
      p.majority_fraction = static_cast<double>(t.first_wins) / t.common;
    } else if (t.second_wins > limit) {
      p.recipe_hi = b;
      p.recipe_lo = a;
      p.majority_fraction = static_cast<double>(t.second_wins) / t.common;
    } else {
      continue;
    }
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [&](const RecipePair& x, const RecipePair& y) {
    const auto& xh = corpus.recipe(x.recipe_hi).id;
    const auto& yh = corpus.recipe(y.recipe_hi).id;
    if (xh != yh) return xh < yh;
    return corpus.recipe(x.recipe_lo).id < corpus.recipe(y.recipe_lo).id;
  });
  return out;
}

inline void write_pairs(std::ostream& out, const Corpus& corpus, std::span<const RecipePair> pairs) {
  for (const auto& p : pairs)
    out << corpus.recipe(p.recipe_hi).id << '\t' << corpus.recipe(p.recipe_lo).id << '\t'
        << text::format_double(p.similarity) << '\t' << p.n_common_raters << '\t'
        << text::format_double(p.majority_fraction) << '\n';
}

}  // namespace recipenet

#endif  // RECIPENET_PAIR_DATASET_HPP_
