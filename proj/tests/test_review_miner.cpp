// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "recipenet/review_miner.hpp"
#include "recipenet/rng.hpp"
#include "support/fixtures.hpp"

namespace rn = recipenet;

namespace {

rn::Vocabulary vocab_of(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  std::vector<rn::Vocabulary::Entry> e;
  for (auto& n : names) e.push_back({n, 1});
  return rn::Vocabulary(std::move(e));
}

const rn::MinerLexicon& lexicon() {
  static const auto l = rn::MinerLexicon::from(fixtures::rules());
  return l;
}

const rn::Vocabulary& vocab() {
  static const auto v = vocab_of({"garlic", "vanilla", "vanilla extract", "sugar", "salt", "cucumber",
                                  "green pepper", "butter", "sour cream", "splenda", "turkey", "beef",
                                  "ground turkey", "worcestershire sauce", "cilantro", "onion", "nutmeg"});
  return v;
}

rn::Review rev(std::string text) { return fixtures::review("r1", "u1", 4, std::move(text)); }

// Direct count-vector cosine used as the oracle.
double ngram_oracle(const std::string& a, const std::string& b, std::size_t n) {
  std::map<std::string, double> ca, cb;
  for (std::size_t i = 0; i + n <= a.size(); ++i) ca[a.substr(i, n)] += 1;
  for (std::size_t i = 0; i + n <= b.size(); ++i) cb[b.substr(i, n)] += 1;
  if (a.empty() && b.empty()) return 1.0;
  double dot = 0, na = 0, nb = 0;
  for (auto& [g, c] : ca) {
    na += c * c;
    if (cb.count(g)) dot += c * cb[g];
  }
  for (auto& [g, c] : cb) nb += c * c;
  if (na == 0 || nb == 0) return 0.0;
  return dot / std::sqrt(na * nb);
}

struct Ev {
  rn::ModKind kind;
  std::string a;
  std::string b;
  bool operator==(const Ev&) const = default;
  friend void PrintTo(const Ev& e, std::ostream* os) {
    *os << rn::to_string(e.kind) << "(" << e.a << (e.b.empty() ? "" : " -> " + e.b) << ")";
  }
};

std::vector<Ev> simplify(const std::vector<rn::ModificationEvent>& events) {
  std::vector<Ev> out;
  for (auto& e : events) out.push_back({e.kind, e.ingredient_a, e.ingredient_b.value_or("")});
  return out;
}

}  // namespace

TEST(Clauses, SplitOnPunctuation) {
  EXPECT_EQ(rn::split_clauses("Great. I doubled the garlic, omitted salt."),
            (std::vector<std::string>{"Great", "I doubled the garlic", "omitted salt"}));
  EXPECT_TRUE(rn::split_clauses("").empty());
  EXPECT_EQ(rn::split_clauses("no punctuation here"), (std::vector<std::string>{"no punctuation here"}));
  EXPECT_EQ(rn::split_clauses("a;b!c?d\ne"), (std::vector<std::string>{"a", "b", "c", "d", "e"}));
}

TEST(Signals, DefaultLexiconHasEighteenTerms) {
  EXPECT_EQ(lexicon().signals.size(), 18u);
}

TEST(Signals, DetectModification) {
  EXPECT_TRUE(rn::detect_modification("I added extra onion", lexicon().signals));
  EXPECT_FALSE(rn::detect_modification("Perfect as written", lexicon().signals));
  EXPECT_TRUE(rn::detect_modification("Omitted the nutmeg", lexicon().signals));
  EXPECT_TRUE(rn::detect_modification("We DIDN'T HAVE eggs", lexicon().signals));
  EXPECT_FALSE(rn::detect_modification("Shortcut to dinner", lexicon().signals));
  EXPECT_THROW(rn::detect_modification("x", {}), rn::InvalidArgument);
}

TEST(NgramCosine, TrivialCases) {
  EXPECT_DOUBLE_EQ(rn::char_ngram_cosine("vanilla", "vanilla"), 1.0);
  EXPECT_DOUBLE_EQ(rn::char_ngram_cosine("abcd", "wxyz"), 0.0);
  EXPECT_DOUBLE_EQ(rn::char_ngram_cosine("", ""), 1.0);
  EXPECT_DOUBLE_EQ(rn::char_ngram_cosine("abc", "abcdef"), 0.0);
  EXPECT_DOUBLE_EQ(rn::char_ngram_cosine("VaNiLLa", "vanilla"), 1.0);
  EXPECT_THROW(rn::char_ngram_cosine("a", "b", 0), rn::InvalidArgument);
}

TEST(NgramCosine, VanillaExtractHandComputed) {
  // "vanilla" has 4 distinct 4-grams, "vanilla extract" has 12, sharing those 4.
  const double expected = 4.0 / std::sqrt(4.0 * 12.0);
  EXPECT_NEAR(rn::char_ngram_cosine("vanilla", "vanilla extract"), expected, 1e-15);
  EXPECT_GE(expected, 0.55);
}

TEST(NgramCosine, MisspellingAgainstNameAndWord) {
  // "wochestershire" shares 7 of its 11 4-grams with "worcestershire".
  EXPECT_NEAR(rn::char_ngram_cosine("wochestershire", "worcestershire"), 7.0 / 11.0, 1e-15);
  EXPECT_NEAR(rn::char_ngram_cosine("wochestershire", "worcestershire sauce"),
              7.0 / std::sqrt(11.0 * 17.0), 1e-15);
}

TEST(NgramCosine, MatchesOracleAndIsSymmetric) {
  rn::Rng rng(3);
  const std::string alphabet = "abcde ";
  for (int t = 0; t < 500; ++t) {
    std::string a, b;
    for (std::size_t i = 0, n = rng.below(12); i < n; ++i) a += alphabet[rng.below(alphabet.size())];
    for (std::size_t i = 0, n = rng.below(12); i < n; ++i) b += alphabet[rng.below(alphabet.size())];
    const std::size_t n = 1 + rng.below(4);
    EXPECT_NEAR(rn::char_ngram_cosine(a, b, n), ngram_oracle(a, b, n), 1e-12) << a << "|" << b;
    EXPECT_EQ(rn::char_ngram_cosine(a, b, n), rn::char_ngram_cosine(b, a, n));
  }
}

TEST(NgramCosine, ProportionalVectorsScoreOne) {
  EXPECT_NEAR(rn::char_ngram_cosine("abab", "ababab", 2), ngram_oracle("abab", "ababab", 2), 1e-15);
  EXPECT_NEAR(rn::char_ngram_cosine("abcabc", "abcabcabc", 3), ngram_oracle("abcabc", "abcabcabc", 3), 1e-15);
  // {ab:2, ba:1} vs {ab:4, ba:2}
  EXPECT_NEAR(rn::char_ngram_cosine("ababa", "ababababa", 2), 1.0, 1e-15);
}

TEST(Adjustments, Examples) {
  rn::ReviewMiner m(vocab(), lexicon());
  EXPECT_EQ(simplify(m.adjustments(rev("used more garlic than called for"), 0)),
            (std::vector<Ev>{{rn::ModKind::AdjustUp, "garlic", ""}}));
  EXPECT_EQ(simplify(m.adjustments(rev("doubled the vanilla extract"), 0)),
            (std::vector<Ev>{{rn::ModKind::AdjustUp, "vanilla extract", ""}}));
  EXPECT_EQ(simplify(m.adjustments(rev("cut the sugar in half"), 0)),
            (std::vector<Ev>{{rn::ModKind::AdjustDown, "sugar", ""}}));
  EXPECT_TRUE(m.adjustments(rev("used more than called for"), 0).empty());
}

TEST(Adjustments, WindowLimitsReach) {
  rn::ReviewMiner m(vocab(), lexicon());
  // "garlic" starts 47 characters after the trigger.
  EXPECT_TRUE(m.adjustments(rev("more of everything that was in the pot and then garlic"), 0).empty());
  EXPECT_EQ(m.adjustments(rev("more of the garlic"), 0).size(), 1u);
}

TEST(Adjustments, OnePerKindAndDeduplicated) {
  rn::ReviewMiner m(vocab(), lexicon());
  auto ev = simplify(m.adjustments(rev("more garlic and more salt. Also more garlic!"), 7));
  EXPECT_EQ(ev, (std::vector<Ev>{{rn::ModKind::AdjustUp, "garlic", ""}}));
  auto both = simplify(m.adjustments(rev("less salt and extra cilantro"), 7));
  EXPECT_EQ(both, (std::vector<Ev>{{rn::ModKind::AdjustUp, "cilantro", ""}, {rn::ModKind::AdjustDown, "cilantro", ""}}))
      << "the longest name inside the window wins, even past a second trigger";
  auto split = simplify(m.adjustments(rev("less salt, extra cilantro"), 7));
  EXPECT_EQ(split, (std::vector<Ev>{{rn::ModKind::AdjustDown, "salt", ""}, {rn::ModKind::AdjustUp, "cilantro", ""}}));
}

TEST(Deletions, Examples) {
  rn::ReviewMiner m(vocab(), lexicon());
  std::vector<std::string> with_vanilla{"sugar", "vanilla extract"};
  EXPECT_EQ(simplify(m.deletions(rev("didn't have vanilla"), 0, with_vanilla)),
            (std::vector<Ev>{{rn::ModKind::Delete, "vanilla extract", ""}}));
  std::vector<std::string> no_cilantro{"onion", "salt"};
  EXPECT_TRUE(m.deletions(rev("left out the cilantro"), 0, no_cilantro).empty());
  std::vector<std::string> sauce{"beef", "worcestershire sauce"};
  EXPECT_EQ(simplify(m.deletions(rev("omitted the wochestershire"), 0, sauce)),
            (std::vector<Ev>{{rn::ModKind::Delete, "worcestershire sauce", ""}}));
}

TEST(Deletions, PicksBestMatchingIngredient) {
  rn::ReviewMiner m(vocab(), lexicon());
  std::vector<std::string> recipe{"green pepper", "garlic", "onion"};
  EXPECT_EQ(simplify(m.deletions(rev("I had no onion on hand"), 0, recipe)),
            (std::vector<Ev>{{rn::ModKind::Delete, "onion", ""}}));
  EXPECT_EQ(simplify(m.deletions(rev("skipped the green pepper"), 0, recipe)),
            (std::vector<Ev>{{rn::ModKind::Delete, "green pepper", ""}}));
}

TEST(Additions, Examples) {
  rn::ReviewMiner m(vocab(), lexicon());
  std::vector<std::string> recipe{"salt", "green pepper"};
  EXPECT_EQ(simplify(m.additions(rev("added cucumber"), 0, recipe)),
            (std::vector<Ev>{{rn::ModKind::Add, "cucumber", ""}}));
  EXPECT_TRUE(m.additions(rev("added cucumber instead of green pepper"), 0, recipe).empty());
  EXPECT_EQ(simplify(m.substitutions(rev("added cucumber instead of green pepper"), 0)),
            (std::vector<Ev>{{rn::ModKind::Substitute, "green pepper", "cucumber"}}));
  EXPECT_TRUE(m.additions(rev("added more salt"), 0, recipe).empty());
  EXPECT_EQ(simplify(m.adjustments(rev("added more salt"), 0)),
            (std::vector<Ev>{{rn::ModKind::AdjustUp, "salt", ""}}));
}

TEST(Substitutions, PatternFamilies) {
  rn::ReviewMiner m(vocab(), lexicon());
  auto one = [&](const char* text) { return simplify(m.substitutions(rev(text), 0)); };
  EXPECT_EQ(one("I replaced the butter in the frosting by sour cream"),
            (std::vector<Ev>{{rn::ModKind::Substitute, "butter", "sour cream"}}));
  EXPECT_EQ(one("substitute splenda for sugar"), (std::vector<Ev>{{rn::ModKind::Substitute, "sugar", "splenda"}}));
  EXPECT_EQ(one("used turkey instead of beef"), (std::vector<Ev>{{rn::ModKind::Substitute, "beef", "turkey"}}));
  EXPECT_EQ(one("using ground turkey instead of beef"),
            (std::vector<Ev>{{rn::ModKind::Substitute, "beef", "ground turkey"}}));
  EXPECT_EQ(one("swapped the butter for sour cream"),
            (std::vector<Ev>{{rn::ModKind::Substitute, "butter", "sour cream"}}));
  EXPECT_EQ(one("replacing sugar with splenda"), (std::vector<Ev>{{rn::ModKind::Substitute, "sugar", "splenda"}}));
  EXPECT_EQ(one("splenda in place of sugar"), (std::vector<Ev>{{rn::ModKind::Substitute, "sugar", "splenda"}}));
  EXPECT_TRUE(one("replaced sugar with sugar").empty());
  EXPECT_TRUE(one("replaced it with something else").empty());
}

TEST(Extraction, InvariantsOverMixedReviews) {
  rn::ReviewMiner m(vocab(), lexicon());
  const std::vector<std::string> recipe{"beef", "garlic", "onion", "salt", "sugar"};
  const std::vector<std::string> phrases{"added cucumber",      "added cucumber instead of onion",
                                         "left out the garlic", "more salt",
                                         "added the salt",      "omitted the cilantro",
                                         "less sugar",          "used turkey instead of beef",
                                         "added garlic",        "replaced sugar with splenda"};
  rn::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::string text;
    for (int k = 0; k < 3; ++k) text += phrases[rng.below(phrases.size())] + ". ";
    for (const auto& clause : rn::split_clauses(text)) {
      auto ev = m.extract(rev(clause), 0, recipe);
      const bool add = std::any_of(ev.begin(), ev.end(), [](auto& e) { return e.kind == rn::ModKind::Add; });
      const bool sub = std::any_of(ev.begin(), ev.end(), [](auto& e) { return e.kind == rn::ModKind::Substitute; });
      EXPECT_FALSE(add && sub) << clause;
    }
    for (const auto& e : m.extract(rev(text), 0, recipe)) {
      const bool member = std::find(recipe.begin(), recipe.end(), e.ingredient_a) != recipe.end();
      if (e.kind == rn::ModKind::Delete) EXPECT_TRUE(member) << text;
      if (e.kind == rn::ModKind::Add) EXPECT_FALSE(member) << text;
      if (e.kind == rn::ModKind::Substitute) {
        ASSERT_TRUE(e.ingredient_b.has_value());
        EXPECT_NE(*e.ingredient_b, e.ingredient_a);
      }
    }
  }
}

TEST(Events, JsonLinesRoundTrip) {
  rn::ReviewMiner m(vocab(), lexicon());
  const std::vector<std::string> recipe{"beef", "sugar"};
  auto ev = m.extract(rev("used turkey instead of beef, added cucumber. Less sugar"), 42, recipe);
  ASSERT_EQ(ev.size(), 3u);
  std::stringstream ss;
  rn::write_events(ss, ev);
  EXPECT_EQ(rn::read_events(ss), ev);
}

TEST(ModStats, RatesAndCounts) {
  auto v = rn::Vocabulary({{"salt", 10}, {"sugar", 4}, {"thyme", 2}});
  std::vector<rn::ModificationEvent> ev;
  for (int i = 0; i < 5; ++i) ev.push_back({std::size_t(i), "r", rn::ModKind::AdjustUp, "salt", {}, ""});
  ev.push_back({9, "r", rn::ModKind::Delete, "sugar", {}, ""});
  ev.push_back({9, "r", rn::ModKind::Substitute, "sugar", "salt", ""});
  auto s = rn::modification_stats(ev, v);
  EXPECT_EQ(s.counts[0].increases, 5);
  EXPECT_DOUBLE_EQ(*rn::ModificationStats::rate(s.counts[0].increases, s.counts[0].recipe_frequency), 0.5);
  EXPECT_EQ(s.counts[1].deletions, 1);
  EXPECT_EQ(s.counts[2].additions + s.counts[2].deletions + s.counts[2].increases + s.counts[2].decreases, 0);
  EXPECT_FALSE(rn::ModificationStats::rate(1, 0).has_value());
}

TEST(ModStats, CorrelationTable) {
  rn::ModificationStats s;
  // frequency, additions, deletions, increases, decreases
  s.counts = {{10, 1, 5, 2, 7}, {20, 2, 4, 4, 1}, {30, 3, 3, 3, 9}, {40, 4, 2, 8, 2}, {50, 5, 1, 5, 5}};
  s.names = {"a", "b", "c", "d", "e"};
  auto c = rn::stats_correlations(s);
  EXPECT_NEAR(*c[0][1], 1.0, 1e-12);
  EXPECT_NEAR(*c[0][2], -1.0, 1e-12);
  // Oracle for frequency vs increases: x = 10..50, y = (2,4,3,8,5).
  {
    const double mx = 30, my = 4.4;
    const double xs[] = {10, 20, 30, 40, 50}, ys[] = {2, 4, 3, 8, 5};
    double sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < 5; ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
      syy += (ys[i] - my) * (ys[i] - my);
    }
    EXPECT_NEAR(*c[0][3], sxy / std::sqrt(sxx * syy), 1e-12);
  }
  for (auto& row : s.counts) row.decreases = 3;
  EXPECT_FALSE(rn::stats_correlations(s)[0][4].has_value());
  s.counts.resize(2);
  EXPECT_THROW(rn::stats_correlations(s), rn::InvalidArgument);
}
