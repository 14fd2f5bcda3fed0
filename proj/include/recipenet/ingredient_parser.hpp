// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_INGREDIENT_PARSER_HPP_
#define RECIPENET_INGREDIENT_PARSER_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "recipenet/corpus.hpp"
#include "recipenet/error.hpp"
#include "recipenet/rules.hpp"
#include "recipenet/text.hpp"

namespace recipenet {

/// Removal lexicons for ingredient-line normalization, read from the
/// [units], [quantities], [fillers] and [descriptors] rule sections.
struct NormalizationRules {
  std::unordered_set<std::string> units;
  std::unordered_set<std::string> quantity_words;
  std::unordered_set<std::string> fillers;
  /// Tokenized descriptor phrases, longest first.
  std::vector<std::vector<std::string>> descriptors;

  static NormalizationRules from(const RuleSet& rules) {
    NormalizationRules n;
    for (const auto& u : rules.section("units")) n.units.insert(u);
    for (const auto& q : rules.section("quantities")) n.quantity_words.insert(q);
    for (const auto& f : rules.section_or_empty("fillers")) n.fillers.insert(f);
    for (const auto& d : rules.section("descriptors")) {
      std::vector<std::string> phrase;
      for (auto& t : text::words(text::fold(d))) phrase.push_back(text::strip_apostrophes(t.text));
      if (!phrase.empty()) n.descriptors.push_back(std::move(phrase));
    }
    std::stable_sort(n.descriptors.begin(), n.descriptors.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return n;
  }
};

namespace detail {

inline std::string drop_bracketed(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') {
      ++depth;
      out.push_back(' ');
    } else if (c == ')' || c == ']') {
      if (depth > 0) --depth;
      out.push_back(' ');
    } else if (depth == 0) {
      out.push_back(c);
    }
  }
  return out;
}

inline bool is_numeric_token(const std::string& t) {
  return !t.empty() && t.front() >= '0' && t.front() <= '9';
}

// One pass of descriptor, numeric, leading-unit and edge-filler removal.
inline std::vector<std::string> strip_once(const std::vector<std::string>& in,
                                           const NormalizationRules& rules) {
  std::vector<std::string> kept;
  kept.reserve(in.size());
  for (std::size_t i = 0; i < in.size();) {
    std::size_t skip = 0;
    for (const auto& phrase : rules.descriptors) {
      if (i + phrase.size() > in.size()) continue;
      if (std::equal(phrase.begin(), phrase.end(), in.begin() + static_cast<std::ptrdiff_t>(i))) {
        skip = phrase.size();
        break;
      }
    }
    if (skip) {
      i += skip;
      continue;
    }
    if (!is_numeric_token(in[i])) kept.push_back(in[i]);
    ++i;
  }
  std::size_t lead = 0;
  while (lead < kept.size() &&
         (rules.units.contains(kept[lead]) || rules.quantity_words.contains(kept[lead]) ||
          rules.fillers.contains(kept[lead])))
    ++lead;
  std::size_t tail = kept.size();
  while (tail > lead && rules.fillers.contains(kept[tail - 1])) --tail;
  return {kept.begin() + static_cast<std::ptrdiff_t>(lead),
          kept.begin() + static_cast<std::ptrdiff_t>(tail)};
}

}  // namespace detail

/// Canonical ingredient name of a raw ingredient line, or nullopt when nothing
/// but quantities, units and descriptors remain.
inline std::optional<std::string> try_normalize_ingredient_line(std::string_view line,
                                                                const NormalizationRules& rules) {
  const std::string cleaned = detail::drop_bracketed(text::fold(line));
  std::vector<std::string> tokens;
  for (auto& t : text::words(cleaned)) {
    auto s = text::strip_apostrophes(t.text);
    if (!s.empty()) tokens.push_back(std::move(s));
  }
  for (;;) {
    auto next = detail::strip_once(tokens, rules);
    if (next == tokens) break;
    tokens = std::move(next);
  }
  if (tokens.empty()) return std::nullopt;
  return text::join(tokens);
}

inline std::string normalize_ingredient_line(std::string_view line,
                                             const NormalizationRules& rules) {
  if (text::trim(line).empty()) throw InvalidArgument("empty ingredient line");
  auto name = try_normalize_ingredient_line(line, rules);
  if (!name) throw InvalidArgument("no ingredient left in line '" + std::string(line) + "'");
  return *name;
}

/// Frequency-ranked ingredient names. Ordered by recipe frequency descending,
/// ties by name ascending.
class Vocabulary {
 public:
  struct Entry {
    std::string name;
    int recipe_frequency = 0;
    bool operator==(const Entry&) const = default;
  };

  Vocabulary() = default;

  explicit Vocabulary(std::vector<Entry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].recipe_frequency <= 0)
        throw InvalidArgument("vocabulary frequency must be positive");
      if (i > 0 && !ordered(entries_[i - 1], entries_[i]))
        throw InvalidArgument("vocabulary entries out of order at '" + entries_[i].name + "'");
      if (!index_.emplace(entries_[i].name, i).second)
        throw InvalidArgument("duplicate vocabulary entry '" + entries_[i].name + "'");
    }
  }

  static bool ordered(const Entry& a, const Entry& b) {
    if (a.recipe_frequency != b.recipe_frequency) return a.recipe_frequency > b.recipe_frequency;
    return a.name < b.name;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  const std::string& name(std::size_t i) const { return entries_.at(i).name; }
  int frequency(std::size_t i) const { return entries_.at(i).recipe_frequency; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.name);
    return out;
  }

  bool operator==(const Vocabulary& o) const { return entries_ == o.entries_; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Distinct normalized names of a recipe's ingredient lines (lines that
/// normalize to nothing are skipped).
inline std::set<std::string> recipe_ingredient_names(const Recipe& recipe,
                                                     const NormalizationRules& rules) {
  std::set<std::string> names;
  for (const auto& line : recipe.ingredient_lines)
    if (auto n = try_normalize_ingredient_line(line, rules)) names.insert(std::move(*n));
  return names;
}

inline Vocabulary build_vocabulary(const Corpus& corpus, std::size_t top_n,
                                   const NormalizationRules& rules) {
  if (corpus.recipes().empty()) throw InvalidArgument("build_vocabulary: empty corpus");
  if (top_n == 0) throw InvalidArgument("build_vocabulary: top_n must be positive");
  std::map<std::string, int> counts;
  for (const auto& r : corpus.recipes())
    for (auto& n : recipe_ingredient_names(r, rules)) ++counts[n];
  std::vector<Vocabulary::Entry> entries;
  entries.reserve(counts.size());
  for (auto& [name, c] : counts) entries.push_back({name, c});
  std::stable_sort(entries.begin(), entries.end(), Vocabulary::ordered);
  if (entries.size() > top_n) entries.resize(top_n);
  return Vocabulary(std::move(entries));
}

/// Sorted vocabulary indices present in each recipe.
using RecipeSets = std::vector<std::vector<std::size_t>>;

inline std::vector<std::size_t> ingredient_indices(const Recipe& recipe, const Vocabulary& vocab,
                                                   const NormalizationRules& rules) {
  std::vector<std::size_t> idx;
  for (const auto& n : recipe_ingredient_names(recipe, rules))
    if (auto i = vocab.find(n)) idx.push_back(*i);
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline RecipeSets recipe_sets(const Corpus& corpus, const Vocabulary& vocab,
                              const NormalizationRules& rules) {
  RecipeSets sets;
  sets.reserve(corpus.recipes().size());
  for (const auto& r : corpus.recipes()) sets.push_back(ingredient_indices(r, vocab, rules));
  return sets;
}

/// Binary presence vector over the vocabulary.
inline std::vector<double> ingredient_vector(const Recipe& recipe, const Vocabulary& vocab,
                                             const NormalizationRules& rules) {
  std::vector<double> f(vocab.size(), 0.0);
  for (std::size_t i : ingredient_indices(recipe, vocab, rules)) f[i] = 1.0;
  return f;
}

inline std::vector<double> indicator(std::span<const std::size_t> set, std::size_t dim) {
  std::vector<double> f(dim, 0.0);
  for (std::size_t i : set) f.at(i) = 1.0;
  return f;
}

/// Fraction of all ingredient lines whose normalized name is in the vocabulary.
inline double vocabulary_coverage(const Corpus& corpus, const Vocabulary& vocab,
                                  const NormalizationRules& rules) {
  std::size_t total = 0, hit = 0;
  for (const auto& r : corpus.recipes()) {
    for (const auto& line : r.ingredient_lines) {
      ++total;
      auto n = try_normalize_ingredient_line(line, rules);
      if (n && vocab.find(*n)) ++hit;
    }
  }
  return total ? static_cast<double>(hit) / static_cast<double>(total) : 0.0;
}

// ---------------------------------------------------------------------------
// Cooking methods

enum class MethodCategory { Heating, Mechanical, Chemical };

struct Method {
  std::string name;
  MethodCategory category;
  std::vector<std::string> stems;
};

class MethodLexicon {
 public:
  MethodLexicon() = default;
  explicit MethodLexicon(std::vector<Method> methods) : methods_(std::move(methods)) {}

  static MethodLexicon from(const RuleSet& rules) {
    std::vector<Method> methods;
    const std::pair<const char*, MethodCategory> sections[] = {
        {"methods.heating", MethodCategory::Heating},
        {"methods.mechanical", MethodCategory::Mechanical},
        {"methods.chemical", MethodCategory::Chemical}};
    for (auto [section, cat] : sections) {
      for (const auto& entry : rules.section(section)) {
        Method m;
        m.category = cat;
        const auto colon = entry.find(':');
        m.name = std::string(text::trim(std::string_view(entry).substr(0, colon)));
        if (colon != std::string::npos)
          for (auto& t : text::words(std::string_view(entry).substr(colon + 1)))
            m.stems.push_back(t.text);
        if (m.stems.empty()) m.stems.push_back(m.name);
        methods.push_back(std::move(m));
      }
    }
    return MethodLexicon(std::move(methods));
  }

  const std::vector<Method>& methods() const { return methods_; }

  /// Distinct method names, sorted.
  std::vector<std::string> names() const {
    std::set<std::string> s;
    for (const auto& m : methods_) s.insert(m.name);
    return {s.begin(), s.end()};
  }

 private:
  std::vector<Method> methods_;
};

/// Methods whose stem begins some word of the directions. Hyphenated words
/// are also checked part by part ("stir-fry").
inline std::set<std::string> extract_methods(std::span<const std::string> directions,
                                             const MethodLexicon& lexicon) {
  std::set<std::string> found;
  auto check = [&](std::string_view word) {
    for (const auto& m : lexicon.methods())
      for (const auto& stem : m.stems)
        if (text::starts_with(word, stem)) found.insert(m.name);
  };
  for (const auto& line : directions) {
    for (const auto& tok : text::words(text::fold(line))) {
      check(tok.text);
      if (tok.text.find('-') != std::string::npos) {
        std::size_t start = 0;
        while (start <= tok.text.size()) {
          auto dash = tok.text.find('-', start);
          if (dash == std::string::npos) dash = tok.text.size();
          if (dash > start) check(std::string_view(tok.text).substr(start, dash - start));
          start = dash + 1;
        }
      }
    }
  }
  return found;
}

}  // namespace recipenet

#endif  // RECIPENET_INGREDIENT_PARSER_HPP_
