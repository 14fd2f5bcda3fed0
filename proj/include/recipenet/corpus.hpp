// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_CORPUS_HPP_
#define RECIPENET_CORPUS_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "recipenet/error.hpp"
#include "recipenet/log.hpp"

namespace recipenet {

enum class Region { Mountain, Midwest, Northeast, South, WestCoast };

inline constexpr std::array<Region, 5> kRegions = {Region::Mountain, Region::Midwest,
                                                   Region::Northeast, Region::South,
                                                   Region::WestCoast};

inline std::string_view to_string(Region r) {
  switch (r) {
    case Region::Mountain: return "Mountain";
    case Region::Midwest: return "Midwest";
    case Region::Northeast: return "Northeast";
    case Region::South: return "South";
    case Region::WestCoast: return "WestCoast";
  }
  return "?";
}

inline std::optional<Region> parse_region(std::string_view s) {
  for (Region r : kRegions)
    if (to_string(r) == s) return r;
  return std::nullopt;
}

/// Nutrient keys in their fixed feature order (units: kcal, g, g, g, mg, mg, g, g).
inline constexpr std::array<std::string_view, 8> kNutrients = {
    "calories", "fat", "carbohydrates", "protein", "sodium", "cholesterol", "fiber", "sugar"};

struct Recipe {
  std::string id;
  std::string title;
  std::vector<std::string> ingredient_lines;
  std::vector<std::string> directions;
  std::map<std::string, double> nutrition;
  int prep_minutes = 0;
  int cook_minutes = 0;
  int servings = 1;
  std::optional<Region> region;

  bool operator==(const Recipe&) const = default;
};

struct Review {
  std::string recipe_id;
  std::string user_id;
  int rating = 0;
  std::string text;
  int helpful_votes = 0;

  bool operator==(const Review&) const = default;
};

/// Validated, immutable recipe/review collection.
class Corpus {
 public:
  Corpus() = default;

  Corpus(std::vector<Recipe> recipes, std::vector<Review> reviews)
      : recipes_(std::move(recipes)), reviews_(std::move(reviews)) {
    for (std::size_t i = 0; i < recipes_.size(); ++i) {
      validate(recipes_[i]);
      if (!index_.emplace(recipes_[i].id, i).second)
        throw InvalidArgument("duplicate recipe id '" + recipes_[i].id + "'");
    }
    by_recipe_.resize(recipes_.size());
    review_recipe_.reserve(reviews_.size());
    for (std::size_t i = 0; i < reviews_.size(); ++i) {
      validate(reviews_[i]);
      auto it = index_.find(reviews_[i].recipe_id);
      if (it == index_.end())
        throw InvalidArgument("review " + std::to_string(i) + " references unknown recipe id '" +
                              reviews_[i].recipe_id + "'");
      by_recipe_[it->second].push_back(i);
      review_recipe_.push_back(it->second);
    }
  }

  std::span<const Recipe> recipes() const { return recipes_; }
  std::span<const Review> reviews() const { return reviews_; }
  const Recipe& recipe(std::size_t i) const { return recipes_.at(i); }
  const Review& review(std::size_t i) const { return reviews_.at(i); }

  std::optional<std::size_t> find_recipe(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Recipe index of review i.
  std::size_t recipe_of(std::size_t review) const { return review_recipe_.at(review); }

  /// Review indices of recipe i, in corpus order.
  const std::vector<std::size_t>& reviews_of(std::size_t recipe) const {
    return by_recipe_.at(recipe);
  }

  /// Unweighted mean rating; nullopt for a recipe without reviews.
  std::optional<double> average_rating(std::size_t recipe) const {
    const auto& rs = by_recipe_.at(recipe);
    if (rs.empty()) return std::nullopt;
    double s = 0.0;
    for (std::size_t r : rs) s += reviews_[r].rating;
    return s / static_cast<double>(rs.size());
  }

  bool operator==(const Corpus& o) const {
    return recipes_ == o.recipes_ && reviews_ == o.reviews_;
  }

  static void validate(const Recipe& r) {
    if (r.id.empty()) throw InvalidArgument("recipe with empty id");
    if (r.ingredient_lines.empty())
      throw InvalidArgument("recipe '" + r.id + "' has no ingredient lines");
    for (const auto& [k, v] : r.nutrition)
      if (!(v >= 0.0)) throw InvalidArgument("recipe '" + r.id + "': negative nutrition " + k);
    if (r.prep_minutes < 0 || r.cook_minutes < 0)
      throw InvalidArgument("recipe '" + r.id + "': negative time");
    if (r.servings < 1) throw InvalidArgument("recipe '" + r.id + "': servings must be positive");
  }

  static void validate(const Review& r) {
    if (r.rating < 1 || r.rating > 5)
      throw InvalidArgument("review of '" + r.recipe_id + "' has rating outside [1,5]");
    if (r.helpful_votes < 0) throw InvalidArgument("negative helpful_votes");
  }

 private:
  std::vector<Recipe> recipes_;
  std::vector<Review> reviews_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> by_recipe_;
  std::vector<std::size_t> review_recipe_;
};

// ---------------------------------------------------------------------------
// JSON Lines encoding

namespace detail {

using nlohmann::json;

inline std::string get_string(const json& j, const char* key, bool required) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) throw InvalidArgument(std::string("missing field '") + key + "'");
    return {};
  }
  if (!it->is_string()) throw InvalidArgument(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

inline long long get_int(const json& j, const char* key, bool required, long long fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) throw InvalidArgument(std::string("missing field '") + key + "'");
    return fallback;
  }
  if (!it->is_number_integer())
    throw InvalidArgument(std::string("field '") + key + "' must be an integer");
  return it->get<long long>();
}

inline std::vector<std::string> get_strings(const json& j, const char* key, bool required) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) throw InvalidArgument(std::string("missing field '") + key + "'");
    return {};
  }
  if (!it->is_array()) throw InvalidArgument(std::string("field '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : *it) {
    if (!e.is_string())
      throw InvalidArgument(std::string("field '") + key + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

template <std::size_t N>
void warn_unknown(const json& j, const std::array<std::string_view, N>& known,
                  const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool found = false;
    for (auto k : known) found = found || (k == it.key());
    if (!found) log::warn(where + ": ignoring unknown key '" + it.key() + "'");
  }
}

}  // namespace detail

inline Recipe recipe_from_json(const nlohmann::json& j, const std::string& where = "recipe") {
  using namespace detail;
  if (!j.is_object()) throw InvalidArgument("record is not an object");
  static constexpr std::array<std::string_view, 9> known = {
      "id", "title", "ingredient_lines", "directions", "nutrition",
      "prep_minutes", "cook_minutes", "servings", "region"};
  warn_unknown(j, known, where);
  Recipe r;
  r.id = get_string(j, "id", true);
  r.title = get_string(j, "title", false);
  r.ingredient_lines = get_strings(j, "ingredient_lines", true);
  r.directions = get_strings(j, "directions", false);
  if (auto it = j.find("nutrition"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw InvalidArgument("field 'nutrition' must be an object");
    for (auto n = it->begin(); n != it->end(); ++n) {
      bool known_key = false;
      for (auto k : kNutrients) known_key = known_key || k == n.key();
      if (!known_key) {
        log::warn(where + ": ignoring unknown nutrient '" + n.key() + "'");
        continue;
      }
      if (!n->is_number()) throw InvalidArgument("nutrition '" + n.key() + "' must be a number");
      r.nutrition[n.key()] = n->get<double>();
    }
  }
  r.prep_minutes = static_cast<int>(get_int(j, "prep_minutes", false, 0));
  r.cook_minutes = static_cast<int>(get_int(j, "cook_minutes", false, 0));
  r.servings = static_cast<int>(get_int(j, "servings", false, 1));
  if (auto it = j.find("region"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw InvalidArgument("field 'region' must be a string");
    auto reg = parse_region(it->get<std::string>());
    if (!reg) throw InvalidArgument("unknown region '" + it->get<std::string>() + "'");
    r.region = reg;
  }
  Corpus::validate(r);
  return r;
}

inline Review review_from_json(const nlohmann::json& j, const std::string& where = "review") {
  using namespace detail;
  if (!j.is_object()) throw InvalidArgument("record is not an object");
  static constexpr std::array<std::string_view, 5> known = {"recipe_id", "user_id", "rating",
                                                            "text", "helpful_votes"};
  warn_unknown(j, known, where);
  Review r;
  r.recipe_id = get_string(j, "recipe_id", true);
  r.user_id = get_string(j, "user_id", true);
  r.rating = static_cast<int>(get_int(j, "rating", true, 0));
  r.text = get_string(j, "text", false);
  r.helpful_votes = static_cast<int>(get_int(j, "helpful_votes", false, 0));
  Corpus::validate(r);
  return r;
}

inline nlohmann::ordered_json to_json(const Recipe& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["title"] = r.title;
  j["ingredient_lines"] = r.ingredient_lines;
  j["directions"] = r.directions;
  nlohmann::ordered_json n = nlohmann::ordered_json::object();
  for (auto k : kNutrients) {
    auto it = r.nutrition.find(std::string(k));
    if (it != r.nutrition.end()) n[std::string(k)] = it->second;
  }
  j["nutrition"] = n;
  j["prep_minutes"] = r.prep_minutes;
  j["cook_minutes"] = r.cook_minutes;
  j["servings"] = r.servings;
  if (r.region) j["region"] = std::string(to_string(*r.region));
  return j;
}

inline nlohmann::ordered_json to_json(const Review& r) {
  nlohmann::ordered_json j;
  j["recipe_id"] = r.recipe_id;
  j["user_id"] = r.user_id;
  j["rating"] = r.rating;
  j["text"] = r.text;
  j["helpful_votes"] = r.helpful_votes;
  return j;
}

/// Parses JSON Lines text; blank lines are skipped. `source` names the input in errors.
template <class Record, class Decode>
std::vector<Record> parse_jsonl(std::istream& in, const std::string& source, Decode decode) {
  std::vector<Record> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool blank = true;
    for (char c : line) blank = blank && (c == ' ' || c == '\t' || c == '\r');
    if (blank) continue;
    try {
      out.push_back(decode(nlohmann::json::parse(line), source + ":" + std::to_string(lineno)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, lineno, std::string("malformed JSON: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return out;
}

inline Corpus parse_corpus(std::istream& recipes_in, std::istream& reviews_in,
                           const std::string& recipes_name = "recipes",
                           const std::string& reviews_name = "reviews") {
  auto recipes = parse_jsonl<Recipe>(recipes_in, recipes_name,
                                     [](const auto& j, const auto& w) { return recipe_from_json(j, w); });
  // Line numbers are needed for dangling-reference errors, so reviews are
  // checked here before Corpus validation.
  std::unordered_map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < recipes.size(); ++i)
    if (!ids.emplace(recipes[i].id, i).second)
      throw InvalidArgument("duplicate recipe id '" + recipes[i].id + "'");
  std::vector<Review> reviews;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(reviews_in, line)) {
    ++lineno;
    bool blank = true;
    for (char c : line) blank = blank && (c == ' ' || c == '\t' || c == '\r');
    if (blank) continue;
    Review r;
    try {
      r = review_from_json(nlohmann::json::parse(line), reviews_name + ":" + std::to_string(lineno));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(reviews_name, lineno, std::string("malformed JSON: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw ParseError(reviews_name, lineno, e.what());
    }
    if (!ids.contains(r.recipe_id))
      throw ParseError(reviews_name, lineno,
                       "dangling reference to unknown recipe id '" + r.recipe_id + "'");
    reviews.push_back(std::move(r));
  }
  return Corpus(std::move(recipes), std::move(reviews));
}

inline Corpus load_corpus(const std::filesystem::path& recipes_path,
                          const std::filesystem::path& reviews_path) {
  std::ifstream rin(recipes_path);
  if (!rin) throw InvalidArgument("cannot open recipes file " + recipes_path.string());
  std::ifstream vin(reviews_path);
  if (!vin) throw InvalidArgument("cannot open reviews file " + reviews_path.string());
  return parse_corpus(rin, vin, recipes_path.string(), reviews_path.string());
}

inline void write_recipes(std::ostream& out, const Corpus& c) {
  for (const auto& r : c.recipes()) out << to_json(r).dump() << '\n';
}

inline void write_reviews(std::ostream& out, const Corpus& c) {
  for (const auto& r : c.reviews()) out << to_json(r).dump() << '\n';
}

inline void write_corpus(const Corpus& c, const std::filesystem::path& recipes_path,
                         const std::filesystem::path& reviews_path) {
  std::ofstream rout(recipes_path);
  std::ofstream vout(reviews_path);
  if (!rout || !vout) throw InvalidArgument("cannot write corpus files");
  write_recipes(rout, c);
  write_reviews(vout, c);
}

}  // namespace recipenet

#endif  // RECIPENET_CORPUS_HPP_
