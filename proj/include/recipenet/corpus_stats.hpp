// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_CORPUS_STATS_HPP_
#define RECIPENET_CORPUS_STATS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "recipenet/corpus.hpp"
#include "recipenet/error.hpp"
#include "recipenet/ingredient_parser.hpp"
#include "recipenet/stats.hpp"

namespace recipenet {

struct MethodRegionTable {
  std::vector<Region> regions;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> counts;  // regions x methods
  std::vector<int> recipes_per_region;
  stats::ChiSquare chi2;
};

/// Region x method counts over region-labeled recipes, with Pearson chi-square.
inline MethodRegionTable method_region_table(const Corpus& corpus, const MethodLexicon& lexicon,
                                             std::span<const std::string> methods) {
  MethodRegionTable t;
  t.regions.assign(kRegions.begin(), kRegions.end());
  t.methods.assign(methods.begin(), methods.end());
  t.counts.assign(t.regions.size(), std::vector<double>(t.methods.size(), 0.0));
  t.recipes_per_region.assign(t.regions.size(), 0);
  std::size_t labeled = 0;
  for (const auto& r : corpus.recipes()) {
    if (!r.region) continue;
    ++labeled;
    const auto row = static_cast<std::size_t>(*r.region);
    ++t.recipes_per_region[row];
    const auto found = extract_methods(r.directions, lexicon);
    for (std::size_t j = 0; j < t.methods.size(); ++j)
      if (found.count(t.methods[j])) t.counts[row][j] += 1.0;
  }
  if (labeled == 0) throw InvalidArgument("method_region_table: no region-labeled recipes");
  t.chi2 = stats::chi_square(t.counts);
  return t;
}

struct RatingContrast {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double welch_t = 0.0;
  double bartlett = 0.0;
};

inline RatingContrast rating_contrast(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw InvalidArgument("rating_contrast: each group needs >= 2 ratings");
  RatingContrast c;
  c.mean_a = stats::mean(a);
  c.mean_b = stats::mean(b);
  c.welch_t = stats::welch_t(a, b);
  c.bartlett = stats::bartlett({a, b});
  return c;
}

}  // namespace recipenet

#endif  // RECIPENET_CORPUS_STATS_HPP_
