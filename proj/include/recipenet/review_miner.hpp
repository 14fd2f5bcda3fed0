// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_REVIEW_MINER_HPP_
#define RECIPENET_REVIEW_MINER_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "recipenet/corpus.hpp"
#include "recipenet/error.hpp"
#include "recipenet/ingredient_parser.hpp"
#include "recipenet/rules.hpp"
#include "recipenet/stats.hpp"
#include "recipenet/text.hpp"

namespace recipenet {

enum class ModKind { AdjustUp, AdjustDown, Delete, Add, Substitute };

inline constexpr std::array<ModKind, 5> kModKinds = {ModKind::AdjustUp, ModKind::AdjustDown,
                                                     ModKind::Delete, ModKind::Add,
                                                     ModKind::Substitute};

inline std::string_view to_string(ModKind k) {
  switch (k) {
    case ModKind::AdjustUp: return "AdjustUp";
    case ModKind::AdjustDown: return "AdjustDown";
    case ModKind::Delete: return "Delete";
    case ModKind::Add: return "Add";
    case ModKind::Substitute: return "Substitute";
  }
  return "?";
}

inline std::optional<ModKind> parse_mod_kind(std::string_view s) {
  for (ModKind k : kModKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct ModificationEvent {
  std::size_t review_id = 0;
  std::string recipe_id;
  ModKind kind = ModKind::Add;
  std::string ingredient_a;
  std::optional<std::string> ingredient_b;
  std::string clause;

  bool operator==(const ModificationEvent&) const = default;
};

// ---------------------------------------------------------------------------
// Lexicons

/// A word or phrase; the last word may be a prefix ("omit*").
struct TermPattern {
  std::vector<std::string> words;
  bool prefix_last = false;

  static TermPattern parse(std::string_view entry) {
    TermPattern t;
    std::string e(text::trim(entry));
    if (!e.empty() && e.back() == '*') {
      t.prefix_last = true;
      e.pop_back();
    }
    for (auto& w : text::words(text::fold(e))) t.words.push_back(w.text);
    if (t.words.empty()) throw InvalidArgument("empty term pattern '" + std::string(entry) + "'");
    return t;
  }
};

/// "replac* {a} with {b}": literal words interleaved with the two slots.
struct SubstitutePattern {
  struct Item {
    enum class Kind { Literal, SlotA, SlotB } kind;
    std::string word;
    bool prefix = false;
  };
  std::vector<Item> items;

  static SubstitutePattern parse(std::string_view entry) {
    SubstitutePattern p;
    bool has_a = false, has_b = false;
    std::size_t i = 0;
    const std::string s(entry);
    while (i < s.size()) {
      if (text::is_space(s[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < s.size() && !text::is_space(s[j])) ++j;
      std::string tok = s.substr(i, j - i);
      i = j;
      if (tok == "{a}") {
        p.items.push_back({Item::Kind::SlotA, {}, false});
        has_a = true;
      } else if (tok == "{b}") {
        p.items.push_back({Item::Kind::SlotB, {}, false});
        has_b = true;
      } else {
        bool prefix = false;
        if (tok.back() == '*') {
          prefix = true;
          tok.pop_back();
        }
        p.items.push_back({Item::Kind::Literal, text::fold(tok), prefix});
      }
    }
    if (!has_a || !has_b) throw InvalidArgument("substitution pattern needs {a} and {b}");
    for (std::size_t k = 1; k < p.items.size(); ++k)
      if (p.items[k].kind != Item::Kind::Literal && p.items[k - 1].kind != Item::Kind::Literal)
        throw InvalidArgument("substitution pattern has adjacent slots");
    return p;
  }
};

struct MinerLexicon {
  std::vector<TermPattern> up, down, del, add, signals;
  std::vector<SubstitutePattern> substitute;
  /// Characters scanned after a trigger for the affected ingredient.
  std::size_t window_chars = 40;
  /// Minimum 4-gram cosine for a deletion to bind to a recipe ingredient.
  double delete_threshold = 0.55;
  std::size_t ngram = 4;

  static MinerLexicon from(const RuleSet& rules) {
    MinerLexicon m;
    auto load = [&](const char* section, std::vector<TermPattern>& into) {
      for (const auto& e : rules.section(section)) into.push_back(TermPattern::parse(e));
    };
    load("triggers.up", m.up);
    load("triggers.down", m.down);
    load("triggers.delete", m.del);
    load("triggers.add", m.add);
    load("signals", m.signals);
    for (const auto& e : rules.section("patterns.substitute"))
      m.substitute.push_back(SubstitutePattern::parse(e));
    return m;
  }
};

// ---------------------------------------------------------------------------
// Text primitives

/// Splits on , . ; ! ? and newlines; clauses are trimmed, empty ones dropped.
inline std::vector<std::string> split_clauses(std::string_view review_text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    auto c = text::trim(review_text.substr(start, end - start));
    if (!c.empty()) out.emplace_back(c);
  };
  for (std::size_t i = 0; i < review_text.size(); ++i) {
    const char c = review_text[i];
    if (c == ',' || c == '.' || c == ';' || c == '!' || c == '?' || c == '\n') {
      flush(i);
      start = i + 1;
    }
  }
  flush(review_text.size());
  return out;
}

namespace detail {

inline bool word_matches(const std::string& token, const std::string& word, bool prefix) {
  return prefix ? text::starts_with(token, word) : token == word;
}

/// Token index range [begin, end) of the first occurrence of `term` at or after `from`.
inline std::optional<std::pair<std::size_t, std::size_t>> find_term(
    const std::vector<text::Token>& toks, const TermPattern& term, std::size_t from = 0) {
  const std::size_t n = term.words.size();
  for (std::size_t i = from; i + n <= toks.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; ok && k < n; ++k)
      ok = word_matches(toks[i + k].text, term.words[k], term.prefix_last && k + 1 == n);
    if (ok) return std::make_pair(i, i + n);
  }
  return std::nullopt;
}

/// Earliest occurrence of any of the terms (ties: earlier term in the list).
inline std::optional<std::pair<std::size_t, std::size_t>> first_trigger(
    const std::vector<text::Token>& toks, std::span<const TermPattern> terms) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (const auto& t : terms) {
    auto hit = find_term(toks, t);
    if (hit && (!best || hit->first < best->first)) best = hit;
  }
  return best;
}

}  // namespace detail

/// True iff any signal term occurs in the text as a word or phrase
/// (case-insensitive; a trailing `*` admits inflections).
inline bool detect_modification(std::string_view review_text,
                                std::span<const TermPattern> signal_lexicon) {
  if (signal_lexicon.empty()) throw InvalidArgument("detect_modification: empty lexicon");
  const auto toks = text::words(text::fold(review_text));
  for (const auto& t : signal_lexicon)
    if (detail::find_term(toks, t)) return true;
  return false;
}

/// Cosine similarity of the character n-gram count vectors of two lowercased
/// strings. A string shorter than n has no n-grams and scores 0, except that
/// two empty strings score 1.
inline double char_ngram_cosine(std::string_view s1, std::string_view s2, std::size_t n = 4) {
  if (n < 1) throw InvalidArgument("char_ngram_cosine: n must be >= 1");
  if (s1.empty() && s2.empty()) return 1.0;
  auto lower = [](std::string_view s) {
    std::string out(s);
    for (char& c : out)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
  };
  const std::string a = lower(s1), b = lower(s2);
  if (a.size() < n || b.size() < n) return 0.0;
  auto grams = [n](const std::string& s) {
    std::vector<std::string_view> g;
    g.reserve(s.size() - n + 1);
    for (std::size_t i = 0; i + n <= s.size(); ++i) g.push_back(std::string_view(s).substr(i, n));
    std::sort(g.begin(), g.end());
    std::vector<std::pair<std::string_view, double>> counts;
    for (auto v : g) {
      if (!counts.empty() && counts.back().first == v)
        counts.back().second += 1.0;
      else
        counts.emplace_back(v, 1.0);
    }
    return counts;
  };
  const auto ga = grams(a), gb = grams(b);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [g, c] : ga) na += c * c;
  for (const auto& [g, c] : gb) nb += c * c;
  std::size_t i = 0, j = 0;
  while (i < ga.size() && j < gb.size()) {
    if (ga[i].first < gb[j].first)
      ++i;
    else if (gb[j].first < ga[i].first)
      ++j;
    else {
      dot += ga[i].second * gb[j].second;
      ++i;
      ++j;
    }
  }
  const double c = dot / std::sqrt(na * nb);
  return std::min(1.0, c);
}

// ---------------------------------------------------------------------------
// Vocabulary matching

/// Maximal-match lookup of vocabulary names inside token windows. Matches are
/// word-aligned; the longest name wins and ties go to the earliest position.
class VocabMatcher {
 public:
  struct Match {
    std::size_t vocab_index;
    std::size_t token_begin;
    std::size_t token_end;
  };

  VocabMatcher() = default;

  explicit VocabMatcher(const Vocabulary& vocab) {
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      const auto& n = vocab.name(i);
      by_name_.emplace(n, i);
      names_.push_back(n);
      std::size_t w = 1;
      for (char c : n) w += (c == ' ');
      max_words_ = std::max(max_words_, w);
    }
  }

  std::optional<Match> longest(const std::vector<text::Token>& toks, std::size_t begin,
                               std::size_t end) const {
    std::optional<Match> best;
    std::size_t best_len = 0;
    end = std::min(end, toks.size());
    for (std::size_t s = begin; s < end; ++s) {
      std::string key;
      for (std::size_t len = 1; len <= max_words_ && s + len <= end; ++len) {
        if (len > 1) key += ' ';
        key += text::strip_apostrophes(toks[s + len - 1].text);
        auto it = by_name_.find(key);
        if (it != by_name_.end() && it->first.size() > best_len) {
          best_len = it->first.size();
          best = Match{it->second, s, s + len};
        }
      }
    }
    return best;
  }

  const std::string& name(std::size_t i) const { return names_.at(i); }

 private:
  std::unordered_map<std::string, std::size_t> by_name_;
  std::vector<std::string> names_;
  std::size_t max_words_ = 0;
};

// ---------------------------------------------------------------------------
// Extraction

/// Per-review modification extractor bound to one vocabulary and lexicon.
class ReviewMiner {
 public:
  ReviewMiner(const Vocabulary& vocab, MinerLexicon lexicon)
      : matcher_(vocab), lexicon_(std::move(lexicon)) {}

  const MinerLexicon& lexicon() const { return lexicon_; }

  std::vector<ModificationEvent> adjustments(const Review& review, std::size_t review_id) const {
    std::vector<ModificationEvent> out;
    for (const auto& clause : split_clauses(review.text)) adjust_clause(clause, review, review_id, out);
    return dedup(std::move(out));
  }

  /// `recipe_ingredients`: in-vocabulary names of the reviewed recipe.
  std::vector<ModificationEvent> deletions(const Review& review, std::size_t review_id,
                                           std::span<const std::string> recipe_ingredients) const {
    std::vector<ModificationEvent> out;
    for (const auto& clause : split_clauses(review.text))
      delete_clause(clause, review, review_id, recipe_ingredients, out);
    return dedup(std::move(out));
  }

  std::vector<ModificationEvent> additions(const Review& review, std::size_t review_id,
                                           std::span<const std::string> recipe_ingredients) const {
    std::vector<ModificationEvent> out;
    for (const auto& clause : split_clauses(review.text))
      add_clause(clause, review, review_id, recipe_ingredients, out);
    return dedup(std::move(out));
  }

  std::vector<ModificationEvent> substitutions(const Review& review, std::size_t review_id) const {
    std::vector<ModificationEvent> out;
    for (const auto& clause : split_clauses(review.text)) substitute_clause(clause, review, review_id, out);
    return dedup(std::move(out));
  }

  /// All event kinds, at most one per (kind, ingredient_a, ingredient_b).
  std::vector<ModificationEvent> extract(const Review& review, std::size_t review_id,
                                         std::span<const std::string> recipe_ingredients) const {
    std::vector<ModificationEvent> out;
    for (const auto& clause : split_clauses(review.text)) {
      adjust_clause(clause, review, review_id, out);
      delete_clause(clause, review, review_id, recipe_ingredients, out);
      add_clause(clause, review, review_id, recipe_ingredients, out);
      substitute_clause(clause, review, review_id, out);
    }
    return dedup(std::move(out));
  }

  /// Structural match of any substitution pattern (slots non-empty), resolved or not.
  bool has_substitution_pattern(const std::vector<text::Token>& toks) const {
    for (const auto& p : lexicon_.substitute) {
      bool found = false;
      for_each_pattern_match(toks, p, [&](const SlotSpans&) {
        found = true;
        return true;
      });
      if (found) return true;
    }
    return false;
  }

 private:
  struct SlotSpans {
    std::size_t a_begin, a_end, b_begin, b_end;
  };

  static std::vector<ModificationEvent> dedup(std::vector<ModificationEvent> events) {
    std::set<std::tuple<ModKind, std::string, std::string>> seen;
    std::vector<ModificationEvent> out;
    for (auto& e : events)
      if (seen.emplace(e.kind, e.ingredient_a, e.ingredient_b.value_or("")).second)
        out.push_back(std::move(e));
    return out;
  }

  // Token indices [first, last) lying within `window_chars` after byte offset `from`.
  std::pair<std::size_t, std::size_t> window_after(const std::vector<text::Token>& toks,
                                                   std::size_t token_from) const {
    if (token_from >= toks.size()) return {toks.size(), toks.size()};
    const std::size_t origin = token_from == 0 ? 0 : toks[token_from - 1].end;
    std::size_t last = token_from;
    while (last < toks.size() && toks[last].end <= origin + lexicon_.window_chars) ++last;
    return {token_from, last};
  }

  std::pair<std::size_t, std::size_t> window_before(const std::vector<text::Token>& toks,
                                                    std::size_t token_to) const {
    if (token_to == 0) return {0, 0};
    const std::size_t origin = toks[token_to].begin;
    std::size_t first = token_to;
    while (first > 0 && toks[first - 1].begin + lexicon_.window_chars >= origin) --first;
    return {first, token_to};
  }

  ModificationEvent make(const Review& review, std::size_t review_id, ModKind kind,
                         std::string a, std::optional<std::string> b,
                         const std::string& clause) const {
    return {review_id, review.recipe_id, kind, std::move(a), std::move(b), clause};
  }

  void adjust_clause(const std::string& clause, const Review& review, std::size_t id,
                     std::vector<ModificationEvent>& out) const {
    const auto toks = text::words(text::fold(clause));
    const std::pair<const std::vector<TermPattern>*, ModKind> dirs[] = {
        {&lexicon_.up, ModKind::AdjustUp}, {&lexicon_.down, ModKind::AdjustDown}};
    for (auto [terms, kind] : dirs) {
      auto trig = detail::first_trigger(toks, *terms);
      if (!trig) continue;
      auto [b, e] = window_after(toks, trig->second);
      if (auto m = matcher_.longest(toks, b, e))
        out.push_back(make(review, id, kind, matcher_.name(m->vocab_index), std::nullopt, clause));
    }
  }

  void delete_clause(const std::string& clause, const Review& review, std::size_t id,
                     std::span<const std::string> recipe_ingredients,
                     std::vector<ModificationEvent>& out) const {
    if (recipe_ingredients.empty()) return;
    const auto toks = text::words(text::fold(clause));
    auto trig = detail::first_trigger(toks, lexicon_.del);
    if (!trig) return;
    auto [b, e] = window_after(toks, trig->second);
    // Rank: similarity, then longer review span, then whole-name over
    // single-word comparison, then recipe order.
    using Key = std::tuple<double, std::size_t, int, std::ptrdiff_t>;
    std::optional<Key> best;
    std::size_t best_ing = 0;
    for (std::size_t s = b; s < e; ++s) {
      std::string span;
      for (std::size_t t = s; t < e && t < s + 4; ++t) {
        if (t > s) span += ' ';
        span += text::strip_apostrophes(toks[t].text);
        for (std::size_t k = 0; k < recipe_ingredients.size(); ++k) {
          const std::string& ing = recipe_ingredients[k];
          auto consider = [&](std::string_view target, int whole) {
            const double sim = char_ngram_cosine(span, target, lexicon_.ngram);
            if (sim < lexicon_.delete_threshold) return;
            Key key{sim, span.size(), whole, -static_cast<std::ptrdiff_t>(k)};
            if (!best || key > *best) {
              best = key;
              best_ing = k;
            }
          };
          consider(ing, 1);
          if (ing.find(' ') != std::string::npos)
            for (auto& w : text::words(ing)) consider(w.text, 0);
        }
      }
    }
    if (best)
      out.push_back(make(review, id, ModKind::Delete, recipe_ingredients[best_ing], std::nullopt, clause));
  }

  void add_clause(const std::string& clause, const Review& review, std::size_t id,
                  std::span<const std::string> recipe_ingredients,
                  std::vector<ModificationEvent>& out) const {
    const auto toks = text::words(text::fold(clause));
    auto trig = detail::first_trigger(toks, lexicon_.add);
    if (!trig) return;
    if (has_substitution_pattern(toks)) return;
    auto [b, e] = window_after(toks, trig->second);
    auto m = matcher_.longest(toks, b, e);
    if (!m) return;
    const auto& name = matcher_.name(m->vocab_index);
    if (std::find(recipe_ingredients.begin(), recipe_ingredients.end(), name) !=
        recipe_ingredients.end())
      return;
    out.push_back(make(review, id, ModKind::Add, name, std::nullopt, clause));
  }

  void substitute_clause(const std::string& clause, const Review& review, std::size_t id,
                         std::vector<ModificationEvent>& out) const {
    const auto toks = text::words(text::fold(clause));
    for (const auto& p : lexicon_.substitute) {
      std::optional<ModificationEvent> ev;
      for_each_pattern_match(toks, p, [&](const SlotSpans& s) {
        auto a = matcher_.longest(toks, s.a_begin, s.a_end);
        auto b = matcher_.longest(toks, s.b_begin, s.b_end);
        if (!a || !b || a->vocab_index == b->vocab_index) return false;
        ev = make(review, id, ModKind::Substitute, matcher_.name(a->vocab_index),
                  matcher_.name(b->vocab_index), clause);
        return true;
      });
      if (ev) {
        out.push_back(std::move(*ev));
        return;
      }
    }
  }

  // Calls `visit(slots)` for each structural match of the pattern, in order of
  // the first literal's position, until `visit` returns true.
  template <class Visit>
  void for_each_pattern_match(const std::vector<text::Token>& toks, const SubstitutePattern& p,
                              Visit&& visit) const {
    using Kind = SubstitutePattern::Item::Kind;
    // Literal runs, and for each slot the index of the run it follows (-1: leading).
    struct Group {
      std::vector<const SubstitutePattern::Item*> words;
    };
    std::vector<Group> groups;
    std::vector<Kind> slots;
    std::vector<int> slot_pos;
    bool after_slot = true;
    for (const auto& it : p.items) {
      if (it.kind == Kind::Literal) {
        if (after_slot) groups.push_back({});
        groups.back().words.push_back(&it);
        after_slot = false;
      } else {
        slots.push_back(it.kind);
        slot_pos.push_back(static_cast<int>(groups.size()) - 1);
        after_slot = true;
      }
    }
    if (groups.empty()) return;

    auto group_at = [&](const Group& g, std::size_t i) {
      if (i + g.words.size() > toks.size()) return false;
      for (std::size_t k = 0; k < g.words.size(); ++k)
        if (!detail::word_matches(toks[i + k].text, g.words[k]->word, g.words[k]->prefix))
          return false;
      return true;
    };

    const bool leading = !slot_pos.empty() && slot_pos.front() == -1;
    for (std::size_t first = leading ? 1 : 0; first < toks.size(); ++first) {
      if (!group_at(groups[0], first)) continue;
      std::vector<std::pair<std::size_t, std::size_t>> pos{{first, first + groups[0].words.size()}};
      bool ok = true;
      for (std::size_t g = 1; ok && g < groups.size(); ++g) {
        ok = false;
        for (std::size_t i = pos.back().second + 1; i < toks.size(); ++i) {
          if (group_at(groups[g], i)) {
            pos.emplace_back(i, i + groups[g].words.size());
            ok = true;
            break;
          }
        }
      }
      if (!ok) continue;
      SlotSpans spans{0, 0, 0, 0};
      bool nonempty = true;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        std::pair<std::size_t, std::size_t> range;
        const int after = slot_pos[s];
        if (after == -1) {
          range = window_before(toks, pos.front().first);
        } else if (after == static_cast<int>(groups.size()) - 1) {
          range = window_after(toks, pos.back().second);
        } else {
          range = {pos[static_cast<std::size_t>(after)].second,
                   pos[static_cast<std::size_t>(after) + 1].first};
        }
        nonempty = nonempty && range.first < range.second;
        if (slots[s] == Kind::SlotA) {
          spans.a_begin = range.first;
          spans.a_end = range.second;
        } else {
          spans.b_begin = range.first;
          spans.b_end = range.second;
        }
      }
      if (!nonempty) continue;
      if (visit(spans)) return;
    }
  }

  VocabMatcher matcher_;
  MinerLexicon lexicon_;
};

/// Events of every review in corpus order, each bound to its recipe's
/// normalized ingredient names. Reviews of unknown recipes are skipped.
inline std::vector<ModificationEvent> mine_corpus(const Corpus& corpus, const ReviewMiner& miner,
                                                  const NormalizationRules& rules) {
  std::vector<std::vector<std::string>> names(corpus.recipes().size());
  std::vector<char> ready(names.size(), 0);
  std::vector<ModificationEvent> out;
  for (std::size_t i = 0; i < corpus.reviews().size(); ++i) {
    const auto& review = corpus.reviews()[i];
    auto r = corpus.find_recipe(review.recipe_id);
    if (!r) continue;
    if (!ready[*r]) {
      auto n = recipe_ingredient_names(corpus.recipe(*r), rules);
      names[*r].assign(n.begin(), n.end());
      ready[*r] = 1;
    }
    auto events = miner.extract(review, i, names[*r]);
    out.insert(out.end(), std::make_move_iterator(events.begin()), std::make_move_iterator(events.end()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aggregates

struct IngredientModCounts {
  int recipe_frequency = 0;
  int additions = 0;
  int deletions = 0;
  int increases = 0;
  int decreases = 0;
};

struct ModificationStats {
  std::vector<std::string> names;
  std::vector<IngredientModCounts> counts;

  /// count / recipe_frequency; nullopt when the ingredient is in no recipe.
  static std::optional<double> rate(int count, int recipe_frequency) {
    if (recipe_frequency <= 0) return std::nullopt;
    return static_cast<double>(count) / recipe_frequency;
  }
};

inline ModificationStats modification_stats(std::span<const ModificationEvent> events,
                                            const Vocabulary& vocab) {
  ModificationStats s;
  s.names = vocab.names();
  s.counts.resize(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) s.counts[i].recipe_frequency = vocab.frequency(i);
  for (const auto& e : events) {
    auto idx = vocab.find(e.ingredient_a);
    if (!idx) continue;
    auto& c = s.counts[*idx];
    switch (e.kind) {
      case ModKind::AdjustUp: ++c.increases; break;
      case ModKind::AdjustDown: ++c.decreases; break;
      case ModKind::Delete: ++c.deletions; break;
      case ModKind::Add: ++c.additions; break;
      case ModKind::Substitute: break;
    }
  }
  return s;
}

inline constexpr std::array<std::string_view, 5> kModStatColumns = {
    "recipe_frequency", "additions", "deletions", "increases", "decreases"};

/// Pearson correlations among the five per-ingredient count columns, over
/// ingredients with non-zero recipe frequency. Entry [i][j] is nullopt when a
/// column has zero variance.
inline std::array<std::array<std::optional<double>, 5>, 5> stats_correlations(
    const ModificationStats& stats) {
  std::array<std::vector<double>, 5> cols;
  for (const auto& c : stats.counts) {
    if (c.recipe_frequency <= 0) continue;
    cols[0].push_back(c.recipe_frequency);
    cols[1].push_back(c.additions);
    cols[2].push_back(c.deletions);
    cols[3].push_back(c.increases);
    cols[4].push_back(c.decreases);
  }
  if (cols[0].size() < 3)
    throw InvalidArgument("stats_correlations: need >= 3 ingredients with non-zero frequency");
  std::array<std::array<std::optional<double>, 5>, 5> out{};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) out[i][j] = stats::pearson(cols[i], cols[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Export

inline nlohmann::ordered_json to_json(const ModificationEvent& e) {
  nlohmann::ordered_json j;
  j["review_id"] = e.review_id;
  j["recipe_id"] = e.recipe_id;
  j["kind"] = std::string(to_string(e.kind));
  j["ingredient_a"] = e.ingredient_a;
  j["ingredient_b"] = e.ingredient_b ? nlohmann::ordered_json(*e.ingredient_b) : nlohmann::ordered_json();
  j["clause"] = e.clause;
  return j;
}

inline void write_events(std::ostream& out, std::span<const ModificationEvent> events) {
  for (const auto& e : events) out << to_json(e).dump() << '\n';
}

inline std::vector<ModificationEvent> read_events(std::istream& in, const std::string& source = "events") {
  return parse_jsonl<ModificationEvent>(in, source, [](const nlohmann::json& j, const std::string&) {
    ModificationEvent e;
    e.review_id = j.at("review_id").get<std::size_t>();
    e.recipe_id = j.at("recipe_id").get<std::string>();
    auto k = parse_mod_kind(j.at("kind").get<std::string>());
    if (!k) throw InvalidArgument("unknown event kind");
    e.kind = *k;
    e.ingredient_a = j.at("ingredient_a").get<std::string>();
    if (!j.at("ingredient_b").is_null()) e.ingredient_b = j.at("ingredient_b").get<std::string>();
    e.clause = j.at("clause").get<std::string>();
    return e;
  });
}

}  // namespace recipenet

#endif  // RECIPENET_REVIEW_MINER_HPP_
