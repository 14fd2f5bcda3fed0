// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "recipenet/corpus.hpp"
#include "recipenet/corpus_stats.hpp"
#include "recipenet/ingredient_parser.hpp"
#include "recipenet/log.hpp"
#include "support/fixtures.hpp"

namespace rn = recipenet;

namespace {

const char* kRecipes =
    R"({"id":"r1","title":"Chili","ingredient_lines":["1 lb ground beef","2 cans kidney beans"],"directions":["Brown the beef.","Simmer 1 hour."],"nutrition":{"calories":410.5,"fat":18},"prep_minutes":15,"cook_minutes":60,"servings":6,"region":"South"}
{"id":"r2","title":"Salad","ingredient_lines":["1 head lettuce"],"directions":[],"prep_minutes":5,"cook_minutes":0,"servings":2}

{"id":"r3","title":"Toast","ingredient_lines":["2 slices bread"],"directions":["Toast the bread."],"servings":1,"region":null}
)";

const char* kReviews =
    R"({"recipe_id":"r1","user_id":"u1","rating":5,"text":"Great","helpful_votes":2}
{"recipe_id":"r1","user_id":"u2","rating":3,"text":"ok"}
{"recipe_id":"r2","user_id":"u1","rating":4,"text":""}
{"recipe_id":"r3","user_id":"u3","rating":1,"text":"burnt"}
{"recipe_id":"r3","user_id":"u1","rating":2,"text":"meh"}
)";

rn::Corpus sample() {
  std::istringstream r(kRecipes), v(kReviews);
  return rn::parse_corpus(r, v);
}

}  // namespace

TEST(Corpus, LoadsWellFormedFiles) {
  auto c = sample();
  EXPECT_EQ(c.recipes().size(), 3u);
  EXPECT_EQ(c.reviews().size(), 5u);
  EXPECT_EQ(c.recipe(0).nutrition.at("calories"), 410.5);
  EXPECT_EQ(c.recipe(0).region, rn::Region::South);
  EXPECT_FALSE(c.recipe(2).region.has_value());
  EXPECT_EQ(*c.find_recipe("r3"), 2u);
  EXPECT_EQ(c.reviews_of(0).size(), 2u);
  EXPECT_DOUBLE_EQ(*c.average_rating(0), 4.0);
}

TEST(Corpus, EmptyReviewsFileIsValid) {
  std::istringstream r(kRecipes), v("");
  auto c = rn::parse_corpus(r, v);
  EXPECT_EQ(c.reviews().size(), 0u);
  EXPECT_FALSE(c.average_rating(0).has_value());
}

TEST(Corpus, DanglingReferenceNamesTheId) {
  std::istringstream r(kRecipes),
      v("{\"recipe_id\":\"r1\",\"user_id\":\"u\",\"rating\":4}\n{\"recipe_id\":\"x9\",\"user_id\":\"u\",\"rating\":4}\n");
  try {
    rn::parse_corpus(r, v);
    FAIL() << "expected ParseError";
  } catch (const rn::ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("x9"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Corpus, MalformedRecordReportsLine) {
  std::istringstream r("{\"id\":\"a\",\"ingredient_lines\":[\"salt\"]}\n{\"id\": oops}\n"), v("");
  try {
    rn::parse_corpus(r, v);
    FAIL() << "expected ParseError";
  } catch (const rn::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Corpus, DuplicateRecipeIdRejected) {
  std::istringstream r("{\"id\":\"a\",\"ingredient_lines\":[\"salt\"]}\n{\"id\":\"a\",\"ingredient_lines\":[\"salt\"]}\n"),
      v("");
  EXPECT_THROW(rn::parse_corpus(r, v), rn::Error);
}

TEST(Corpus, RatingOutOfRangeRejected) {
  std::istringstream r(kRecipes), v("{\"recipe_id\":\"r1\",\"user_id\":\"u\",\"rating\":6}\n");
  EXPECT_THROW(rn::parse_corpus(r, v), rn::ParseError);
}

TEST(Corpus, UnknownKeysWarn) {
  rn::log::ScopedCapture capture;
  std::istringstream r("{\"id\":\"a\",\"ingredient_lines\":[\"salt\"],\"colour\":\"red\"}\n"), v("");
  auto c = rn::parse_corpus(r, v);
  EXPECT_EQ(c.recipes().size(), 1u);
  ASSERT_FALSE(capture.messages().empty());
  EXPECT_NE(capture.messages().front().find("colour"), std::string::npos);
}

TEST(Corpus, RoundTripThroughFiles) {
  auto c = sample();
  fixtures::TempDir dir("corpus");
  rn::write_corpus(c, dir.path() / "recipes.jsonl", dir.path() / "reviews.jsonl");
  auto back = rn::load_corpus(dir.path() / "recipes.jsonl", dir.path() / "reviews.jsonl");
  EXPECT_EQ(back, c);
}

TEST(CorpusStats, MethodRegionTableCountsLabeledRecipesOnly) {
  auto c = sample();
  auto lex = rn::MethodLexicon::from(fixtures::rules());
  std::vector<std::string> methods{"simmer", "toast"};
  std::vector<rn::Recipe> recipes(c.recipes().begin(), c.recipes().end());
  recipes[2].region = rn::Region::Midwest;
  rn::Corpus labeled(recipes, {});
  auto t = rn::method_region_table(labeled, lex, methods);
  const auto south = static_cast<std::size_t>(rn::Region::South);
  const auto midwest = static_cast<std::size_t>(rn::Region::Midwest);
  EXPECT_EQ(t.counts[south][0], 1.0);
  EXPECT_EQ(t.counts[south][1], 0.0);
  EXPECT_EQ(t.counts[midwest][1], 1.0);
  EXPECT_EQ(t.chi2.df, 1);
}

TEST(CorpusStats, MethodRegionTableNeedsLabels) {
  std::vector<rn::Recipe> recipes{fixtures::recipe("a", {"salt"})};
  rn::Corpus c(recipes, {});
  auto lex = rn::MethodLexicon::from(fixtures::rules());
  std::vector<std::string> methods{"bake"};
  EXPECT_THROW(rn::method_region_table(c, lex, methods), rn::InvalidArgument);
}

TEST(CorpusStats, RatingContrast) {
  std::vector<double> a{5, 5, 4, 4}, b{3, 3, 2, 2}, one{4};
  auto r = rn::rating_contrast(a, b);
  EXPECT_DOUBLE_EQ(r.mean_a, 4.5);
  EXPECT_DOUBLE_EQ(r.mean_b, 2.5);
  EXPECT_NEAR(r.welch_t, 4.898979485566356, 1e-12);
  EXPECT_NEAR(r.bartlett, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(rn::rating_contrast(a, a).welch_t, 0.0);
  EXPECT_THROW(rn::rating_contrast(a, one), rn::InvalidArgument);
}
