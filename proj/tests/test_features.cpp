// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "recipenet/features.hpp"
#include "recipenet/log.hpp"
#include "support/fixtures.hpp"

namespace rn = recipenet;

namespace {

const rn::MethodLexicon& lexicon() {
  static const auto l = rn::MethodLexicon::from(fixtures::rules());
  return l;
}

std::size_t count_nonzero(const rn::FeatureVector& v, rn::FeatureGroup g) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i) n += v.groups[i] == g && v.values[i] != 0.0;
  return n;
}

// Path a-b-c-d-e with unit weights, stored in both directions.
rn::WeightedDiGraph path5() {
  rn::WeightedDiGraph g(rn::NetworkKind::Complement, {"a", "b", "c", "d", "e"});
  for (std::size_t i = 0; i + 1 < 5; ++i) g.set_symmetric(i, i + 1, 1.0);
  return g;
}

rn::FeatureContext small_context(std::size_t k) {
  rn::FeatureContext ctx;
  ctx.methods = lexicon();
  ctx.ingredient_names = {"a", "b", "c", "d", "e"};
  ctx.community_k = k;
  auto g = path5();
  ctx.networks.push_back(rn::summarize_network(g, std::min<std::size_t>(k, 5), 1));
  rn::WeightedDiGraph sub(rn::NetworkKind::Substitute, ctx.ingredient_names);
  sub.set_edge(0, 1, 1.0);
  ctx.networks.push_back(rn::summarize_network(sub, std::min<std::size_t>(k, 5), 1));
  return ctx;
}

}  // namespace

TEST(BaselineFeatures, EmptyDirectionsPassEffortThrough) {
  auto r = fixtures::recipe("r", {"1 egg"});
  r.prep_minutes = 12;
  r.cook_minutes = 30;
  r.servings = 4;
  auto v = rn::baseline_features(r, lexicon());
  EXPECT_EQ(v.size(), lexicon().names().size() + 3);
  EXPECT_EQ(v.values[v.size() - 3], 12.0);
  EXPECT_EQ(v.values[v.size() - 2], 30.0);
  EXPECT_EQ(v.values[v.size() - 1], 4.0);
  for (std::size_t i = 0; i + 3 < v.size(); ++i) EXPECT_EQ(v.values[i], 0.0);
}

TEST(BaselineFeatures, BakeThenGrill) {
  auto r = fixtures::recipe("r", {"1 egg"}, {"Bake for 10 minutes, then grill until charred."});
  auto v = rn::baseline_features(r, lexicon());
  std::vector<std::string> set;
  for (std::size_t i = 0; i + 3 < v.size(); ++i)
    if (v.values[i] == 1.0) set.push_back(v.names[i]);
  EXPECT_EQ(set, (std::vector<std::string>{"method.bake", "method.grill"}));
}

TEST(BaselineFeatures, ServingsDifferInOneEntry) {
  auto a = fixtures::recipe("a", {"1 egg"}, {"Whisk and fry."});
  auto b = a;
  b.servings = 8;
  auto va = rn::baseline_features(a, lexicon()), vb = rn::baseline_features(b, lexicon());
  std::size_t diff = 0;
  for (std::size_t i = 0; i < va.size(); ++i) diff += va.values[i] != vb.values[i];
  EXPECT_EQ(diff, 1u);
}

TEST(NutritionFeatures, PresentAndMissing) {
  auto r = fixtures::recipe("r", {"1 egg"});
  double x = 1.5;
  for (auto k : rn::kNutrients) r.nutrition[std::string(k)] = x++;
  auto v = rn::nutrition_features(r);
  ASSERT_EQ(v.size(), 16u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(v.values[i], 1.5 + i);
  for (std::size_t i = 8; i < 16; ++i) EXPECT_EQ(v.values[i], 0.0);
  r.nutrition.erase("fiber");
  auto w = rn::nutrition_features(r);
  EXPECT_EQ(w.values[6], 0.0);
  EXPECT_EQ(w.names[14], "nutrition.fiber_missing");
  EXPECT_EQ(w.values[14], 1.0);
}

TEST(NutritionFeatures, SurviveCorpusRoundTrip) {
  auto r = fixtures::recipe("r", {"1 egg"});
  r.nutrition = {{"calories", 412.37}, {"fat", 0.1 + 0.2}, {"sodium", 1e-7}};
  rn::Corpus c({r}, {});
  fixtures::TempDir dir("nut");
  rn::write_corpus(c, dir.path() / "r.jsonl", dir.path() / "v.jsonl");
  auto back = rn::load_corpus(dir.path() / "r.jsonl", dir.path() / "v.jsonl");
  EXPECT_EQ(rn::nutrition_features(back.recipe(0)).values, rn::nutrition_features(r).values);
}

TEST(PositionFeatures, DotProducts) {
  std::vector<double> ones(6, 1.0), f{1, 0, 1, 1, 0, 0}, zero(6, 0.0);
  EXPECT_EQ(rn::position_feature(ones, f), 3.0);
  EXPECT_EQ(rn::position_feature(ones, zero), 0.0);
  std::vector<double> bad(5, 1.0);
  EXPECT_THROW(rn::position_feature(ones, bad), rn::InvalidArgument);
}

TEST(PositionFeatures, PathGraphByHand) {
  // Ordered pairs through b: (a,c),(a,d),(a,e) and reverses = 6; through c: 8.
  // Normalized by (n-1)(n-2) = 12.
  auto ctx = small_context(2);
  std::vector<std::size_t> bc{1, 2};
  auto v = rn::network_position_features(ctx, bc);
  auto find = [&](const std::string& name) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v.names[i] == name) return v.values[i];
    ADD_FAILURE() << name;
    return std::nan("");
  };
  EXPECT_NEAR(find("position.complement.betweenness"), 6.0 / 12 + 8.0 / 12, 1e-12);
  EXPECT_EQ(find("position.complement.degree_total"), 8.0);
  EXPECT_EQ(find("position.complement.strength"), 8.0);
  EXPECT_EQ(find("position.substitute.degree_in"), 1.0);
  EXPECT_EQ(find("position.substitute.degree_out"), 0.0);
  EXPECT_EQ(v.size(), 2 * rn::kCentralities.size());
}

TEST(CommunityGroup, PadsMissingDimensionsWithZero) {
  auto ctx = small_context(4);
  EXPECT_EQ(ctx.networks[1].basis.k, 1u);  // one substitute edge: rank 1
  std::vector<std::size_t> s{0, 1};
  auto v = rn::network_community_features(ctx, s);
  ASSERT_EQ(v.size(), 8u);
  EXPECT_NE(v.values[4], 0.0);
  for (std::size_t j = 5; j < 8; ++j) EXPECT_EQ(v.values[j], 0.0);
  std::vector<std::size_t> empty;
  for (double x : rn::network_community_features(ctx, empty).values) EXPECT_EQ(x, 0.0);
}

TEST(PairFeatures, LengthsAndSwapSymmetry) {
  auto ctx = small_context(3);
  auto x = fixtures::recipe("x", {"1 a"}, {"Bake."});
  auto y = fixtures::recipe("y", {"1 b"}, {"Grill."});
  x.nutrition["fat"] = 3;
  std::vector<std::size_t> sx{0, 2}, sy{1, 3, 4};
  std::vector<rn::FeatureGroup> base{rn::FeatureGroup::Baseline};
  EXPECT_EQ(rn::pair_features(ctx, x, sx, y, sy, base).size(), 2 * rn::baseline_features(x, ctx.methods).size());
  auto all = rn::pair_features(ctx, x, sx, y, sy, rn::kFeatureGroups);
  std::size_t per_side = 0;
  for (auto g : rn::kFeatureGroups) {
    std::vector<rn::FeatureGroup> one{g};
    per_side += rn::recipe_features(ctx, x, sx, one).size();
  }
  EXPECT_EQ(all.size(), 2 * per_side);
  auto swapped = rn::pair_features(ctx, y, sy, x, sx, rn::kFeatureGroups);
  const std::size_t h = all.size() / 2;
  for (std::size_t i = 0; i < h; ++i) {
    EXPECT_EQ(all.values[i], swapped.values[h + i]);
    EXPECT_EQ(all.values[h + i], swapped.values[i]);
    EXPECT_EQ(all.names[i].substr(2), all.names[h + i].substr(2));
  }
  EXPECT_EQ(all.names.front().substr(0, 2), "x.");
  EXPECT_EQ(all.names.back().substr(0, 2), "y.");
}

TEST(PairFeatures, DimensionDependsOnlyOnGroups) {
  auto ctx = small_context(3);
  auto r1 = fixtures::recipe("p", {"1 a"}, {"Simmer, chop, marinate."});
  auto r2 = fixtures::recipe("q", {"1 a"});
  std::vector<std::size_t> s1{0, 1, 2, 3, 4}, s2{};
  for (auto g : rn::kFeatureGroups) {
    std::vector<rn::FeatureGroup> one{g};
    auto a = rn::recipe_features(ctx, r1, s1, one), b = rn::recipe_features(ctx, r2, s2, one);
    EXPECT_EQ(a.names, b.names) << rn::to_string(g);
  }
}

TEST(FeatureGroups, NamesParseAndClassify) {
  for (auto g : rn::kFeatureGroups) EXPECT_EQ(rn::parse_feature_group(rn::to_string(g)), g);
  EXPECT_THROW(rn::parse_feature_group("flavor"), rn::InvalidArgument);
  EXPECT_EQ(rn::group_of_feature("x.method.bake"), rn::FeatureGroup::Baseline);
  EXPECT_EQ(rn::group_of_feature("y.servings"), rn::FeatureGroup::Baseline);
  EXPECT_EQ(rn::group_of_feature("y.ingredient.salt"), rn::FeatureGroup::FullIngredients);
  EXPECT_EQ(rn::group_of_feature("x.community.substitute.3"), rn::FeatureGroup::NetCommunity);
  EXPECT_EQ(rn::group_of_feature("x.position.complement.pagerank"), rn::FeatureGroup::NetPosition);
  EXPECT_EQ(rn::group_of_feature("x.nutrition.fat_missing"), rn::FeatureGroup::Nutrition);
}

TEST(Conditions, FiveInOrder) {
  ASSERT_EQ(rn::conditions().size(), 5u);
  EXPECT_EQ(rn::conditions().front().name, "baseline");
  EXPECT_EQ(rn::conditions().back().name, "combined");
  EXPECT_THROW(rn::find_condition("svm"), rn::InvalidArgument);
}

TEST(FeatureTable, SelectsColumnsAndOrientsPairs) {
  auto ctx = small_context(3);
  std::vector<rn::Recipe> recipes{fixtures::recipe("r0", {"1 a"}, {"Bake."}), fixtures::recipe("r1", {"1 b"}),
                                  fixtures::recipe("r2", {"1 c"}, {"Fry."})};
  recipes[1].servings = 6;
  rn::Corpus c(recipes, {});
  rn::RecipeSets sets{{0, 1}, {1}, {2, 3, 4}};
  auto t = rn::FeatureTable::build(ctx, c, sets);
  EXPECT_EQ(t.rows(), 3u);
  auto net = rn::find_condition("networks").groups;
  auto cols3 = t.select(net, 3), cols1 = t.select(net, 1);
  const std::size_t base = lexicon().names().size() + 3, pos = 2 * rn::kCentralities.size();
  EXPECT_EQ(cols3.size(), base + pos + 2 * 3);
  EXPECT_EQ(cols1.size(), base + pos + 2 * 1);
  EXPECT_THROW(t.select(net, 4), rn::InvalidArgument);

  for (std::size_t r = 0; r < 3; ++r) {
    auto v = rn::recipe_features(ctx, c.recipe(r), sets[r], rn::kFeatureGroups);
    for (std::size_t j = 0; j < t.cols(); ++j) EXPECT_EQ(t.at(r, j), v.values[j]);
  }

  std::vector<rn::RecipePair> pairs{{.recipe_hi = 0, .recipe_lo = 1}, {.recipe_hi = 2, .recipe_lo = 0}};
  std::vector<char> swapped{0, 1};
  auto d = rn::build_pair_dataset(t, pairs, cols3, swapped);
  EXPECT_EQ(d.cols, 2 * cols3.size());
  EXPECT_EQ(d.y, (std::vector<int>{1, -1}));
  const std::size_t servings_col = base - 1;
  EXPECT_EQ(d.at(0, servings_col), 1.0);
  EXPECT_EQ(d.at(0, cols3.size() + servings_col), 6.0);
  // Second pair is swapped: recipe 0 (lo) sits on the x side.
  EXPECT_EQ(d.at(1, 0), t.at(0, cols3[0]));
  EXPECT_EQ(d.at(1, cols3.size()), t.at(2, cols3[0]));
  EXPECT_EQ(d.feature_names[0], "x." + t.names()[cols3[0]]);

  std::ostringstream out;
  rn::write_feature_matrix(out, d);
  std::size_t lines = 0;
  for (char ch : out.str()) lines += ch == '\n';
  EXPECT_EQ(lines, 3u);
}

TEST(PmiRating, ConstantRatingsAndTooFewRecipes) {
  std::vector<rn::Recipe> recipes;
  std::vector<rn::Review> reviews;
  rn::RecipeSets sets;
  for (int i = 0; i < 6; ++i) {
    recipes.push_back(fixtures::recipe("r" + std::to_string(i), {"1 a"}));
    reviews.push_back(fixtures::review("r" + std::to_string(i), "u", 4));
    sets.push_back(i % 2 ? std::vector<std::size_t>{0, 1, 2} : std::vector<std::size_t>{0, 1});
  }
  rn::Corpus c(recipes, reviews);
  auto counts = rn::CooccurrenceCounts::from(sets, 3);
  auto r = rn::pmi_rating_correlation(c, sets, counts);
  EXPECT_EQ(r.recipes, 6u);
  EXPECT_FALSE(r.max.has_value());

  rn::RecipeSets singles(6, std::vector<std::size_t>{0});
  EXPECT_THROW(rn::pmi_rating_correlation(c, singles, rn::CooccurrenceCounts::from(singles, 3)), rn::Undefined);
}

TEST(PmiRating, HandComputedCorrelation) {
  // Recipes {0,1} rated 5 and {0,2} rated 1; {1,2} never co-occur otherwise.
  std::vector<rn::Recipe> recipes;
  std::vector<rn::Review> reviews;
  rn::RecipeSets sets{{0, 1}, {0, 1}, {0, 2}, {0, 2}, {0, 2}, {1, 2}};
  const int ratings[] = {5, 4, 1, 2, 1, 3};
  for (int i = 0; i < 6; ++i) {
    recipes.push_back(fixtures::recipe("r" + std::to_string(i), {"1 a"}));
    reviews.push_back(fixtures::review("r" + std::to_string(i), "u", ratings[i]));
  }
  rn::Corpus c(recipes, reviews);
  auto counts = rn::CooccurrenceCounts::from(sets, 3);
  auto r = rn::pmi_rating_correlation(c, sets, counts);
  // PMI(0,1) = ln(2*6/(5*3)), PMI(0,2) = ln(3*6/(5*4)), PMI(1,2) = ln(1*6/(3*4)).
  std::vector<double> x{std::log(12.0 / 15), std::log(12.0 / 15), std::log(18.0 / 20), std::log(18.0 / 20),
                        std::log(18.0 / 20), std::log(6.0 / 12)};
  std::vector<double> y{5, 4, 1, 2, 1, 3};
  EXPECT_NEAR(*r.max, *rn::stats::pearson(x, y), 1e-12);
  EXPECT_NEAR(*r.min, *r.max, 1e-12);
}
