// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

// Seeded synthetic corpora with planted ingredient communities, substitutions,
// rating structure and templated modification reviews.

#ifndef RECIPENET_SYNTHETIC_HPP_
#define RECIPENET_SYNTHETIC_HPP_

#include <algorithm>
#include <array>
#include <cstdio>
#include <optional>
#include <span>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "recipenet/corpus.hpp"
#include "recipenet/error.hpp"
#include "recipenet/log.hpp"
#include "recipenet/review_miner.hpp"
#include "recipenet/rng.hpp"

namespace recipenet {

/// Ingredient names in themed blocks of 20. Every name normalizes to itself
/// and contains no modification trigger or signal word.
inline const std::vector<std::string>& ingredient_bank() {
  static const std::vector<std::string> bank = {
      // baking
      "flour", "white sugar", "brown sugar", "splenda", "baking soda", "baking powder", "butter", "margarine",
      "shortening", "vanilla extract", "milk", "buttermilk", "egg", "cocoa powder", "chocolate chips",
      "cinnamon", "nutmeg", "cornstarch", "powdered sugar", "honey",
      // italian
      "olive oil", "garlic", "onion", "tomato sauce", "tomato paste", "basil", "oregano", "parmesan cheese",
      "mozzarella cheese", "ricotta cheese", "spaghetti", "lasagna noodles", "italian sausage", "ground beef",
      "red wine", "balsamic vinegar", "pine nuts", "zucchini", "eggplant", "capers",
      // mexican
      "tortillas", "black beans", "pinto beans", "salsa", "jalapeno", "cilantro", "lime juice", "cumin",
      "chili powder", "cheddar cheese", "sour cream", "avocado", "corn", "green chiles", "enchilada sauce",
      "refried beans", "monterey jack cheese", "chicken breast", "tomatillo", "cayenne pepper",
      // asian
      "soy sauce", "sesame oil", "ginger", "rice vinegar", "green onion", "white rice", "brown rice",
      "hoisin sauce", "fish sauce", "oyster sauce", "tofu", "bok choy", "snow peas", "sriracha", "coconut milk",
      "curry paste", "lemongrass", "bean sprouts", "shrimp", "sesame seeds",
      // breakfast
      "bacon", "turkey bacon", "maple syrup", "pancake mix", "oats", "blueberries", "banana", "strawberry",
      "yogurt", "greek yogurt", "cream cheese", "heavy cream", "orange juice", "hash browns", "ham",
      "swiss cheese", "spinach", "mushroom", "raisins", "walnuts",
      // barbecue
      "ketchup", "mustard", "worcestershire sauce", "barbecue sauce", "apple cider vinegar", "paprika",
      "garlic powder", "onion powder", "black pepper", "pork ribs", "pork shoulder", "chicken thighs",
      "beef brisket", "liquid smoke", "molasses", "hot sauce", "pickles", "hamburger buns", "beer", "cabbage",
      // salad
      "lettuce", "romaine", "cucumber", "carrot", "celery", "red onion", "bell pepper", "feta cheese",
      "mayonnaise", "light mayonnaise", "dijon mustard", "lemon juice", "red wine vinegar", "croutons",
      "sunflower seeds", "craisins", "potato", "radish", "kale", "quinoa",
      // dessert
      "whipped topping", "graham crackers", "pie crust", "apple", "peach", "pecans", "coconut", "lemon zest",
      "gelatin", "condensed milk", "evaporated milk", "pumpkin puree", "caramel sauce", "marshmallows",
      "almonds", "cherry", "pineapple", "ice cream", "rhubarb", "cool whip"};
  return bank;
}

struct PlantedSubstitution {
  std::string from;
  std::string to;
  double probability = 1.0;
  bool operator==(const PlantedSubstitution&) const = default;
};

struct SyntheticConfig {
  std::size_t n_recipes = 5000;
  std::size_t n_users = 4000;
  std::size_t n_reviews = 50000;
  std::size_t n_ingredients = 160;
  std::size_t n_communities = 8;
  double community_cohesion = 0.9;
  /// Relative chance of each community hosting a dish; empty means uniform.
  std::vector<double> community_popularity;
  std::vector<PlantedSubstitution> planted_substitutions;
  /// Explicit per-ingredient rating contributions; override the generated ones.
  std::map<std::string, double> quality_weights;
  std::uint64_t seed = 1;

  // Dish structure: recipes come in groups of variants of one base dish.
  std::size_t recipes_per_dish = 10;
  std::size_t base_ingredients_min = 5;
  std::size_t base_ingredients_max = 8;
  double variant_drop = 0.15;
  std::size_t variant_extras_max = 2;
  /// Chance a variant swaps a planted source ingredient for its target.
  double variant_substitution = 0.5;

  // Reviewing: each dish gets a session of raters who review most variants.
  std::size_t raters_per_dish_min = 6;
  std::size_t raters_per_dish_max = 16;
  double rate_probability = 0.9;

  // Latent rating = base + ingredient weights + method bonuses + health term
  // + user bias + noise, rounded and clipped to 1..5.
  double rating_base = 3.6;
  double rating_noise = 0.8;
  double user_bias = 0.4;
  double community_quality = 0.3;
  double ingredient_quality_noise = 0.1;
  double substitution_quality = 0.35;
  std::map<std::string, double> method_quality = {{"grill", 0.3},  {"marinate", 0.25}, {"roast", 0.2},
                                                  {"fry", -0.2},   {"microwave", -0.3}, {"boil", -0.15}};
  double health_quality = 0.2;
  double nutrition_missing = 0.05;

  /// Fraction of reviews carrying modification sentences.
  double template_fraction = 0.6;
  double region_fraction = 0.5;

  void validate() const;
  bool operator==(const SyntheticConfig&) const = default;

  /// Bundled demo configuration: 5000 recipes, 50000 reviews, eight
  /// communities and seventeen planted substitutions.
  static SyntheticConfig demo();
};

inline SyntheticConfig SyntheticConfig::demo() {
  SyntheticConfig c;
  c.planted_substitutions = {
      {"margarine", "butter", 0.9},           {"shortening", "butter", 0.8},
      {"white sugar", "splenda", 0.7},        {"ground beef", "italian sausage", 0.8},
      {"ricotta cheese", "mozzarella cheese", 0.7}, {"pinto beans", "black beans", 0.8},
      {"monterey jack cheese", "cheddar cheese", 0.7}, {"white rice", "brown rice", 0.9},
      {"fish sauce", "soy sauce", 0.6},       {"bacon", "turkey bacon", 0.9},
      {"yogurt", "greek yogurt", 0.8},        {"ketchup", "barbecue sauce", 0.8},
      {"pork shoulder", "beef brisket", 0.6}, {"mayonnaise", "light mayonnaise", 0.9},
      {"lettuce", "romaine", 0.8},            {"cool whip", "whipped topping", 0.7},
      {"pecans", "almonds", 0.7}};
  return c;
}

inline void SyntheticConfig::validate() const {
  auto prob = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string("synthetic: ") + what + " must be in [0,1]");
  };
  if (n_recipes == 0 || n_users == 0 || n_reviews == 0 || n_ingredients == 0 || n_communities == 0)
    throw InvalidArgument("synthetic: counts must be positive");
  if (n_ingredients > ingredient_bank().size())
    throw InvalidArgument("synthetic: at most " + std::to_string(ingredient_bank().size()) + " ingredients");
  if (n_communities > n_ingredients) throw InvalidArgument("synthetic: more communities than ingredients");
  if (!(community_cohesion > 0.0 && community_cohesion <= 1.0))
    throw InvalidArgument("synthetic: community_cohesion must be in (0,1]");
  if (!community_popularity.empty()) {
    if (community_popularity.size() != n_communities)
      throw InvalidArgument("synthetic: community_popularity needs one entry per community");
    double total = 0.0;
    for (double w : community_popularity) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("synthetic: community_popularity must be >= 0");
      total += w;
    }
    if (total <= 0.0) throw InvalidArgument("synthetic: community_popularity sums to zero");
  }
  if (recipes_per_dish == 0 || base_ingredients_min == 0 || base_ingredients_min > base_ingredients_max)
    throw InvalidArgument("synthetic: bad dish shape");
  if (raters_per_dish_min > raters_per_dish_max || raters_per_dish_max > n_users)
    throw InvalidArgument("synthetic: bad rater range");
  prob(variant_drop, "variant_drop");
  prob(variant_substitution, "variant_substitution");
  prob(rate_probability, "rate_probability");
  prob(nutrition_missing, "nutrition_missing");
  prob(template_fraction, "template_fraction");
  prob(region_fraction, "region_fraction");
  if (rating_noise < 0 || user_bias < 0 || ingredient_quality_noise < 0)
    throw InvalidArgument("synthetic: noise scales must be non-negative");
  const auto& bank = ingredient_bank();
  auto known = [&](const std::string& name) {
    auto it = std::find(bank.begin(), bank.end(), name);
    return it != bank.end() && static_cast<std::size_t>(it - bank.begin()) < n_ingredients;
  };
  for (const auto& s : planted_substitutions) {
    prob(s.probability, "substitution probability");
    if (!known(s.from) || !known(s.to))
      throw InvalidArgument("synthetic: planted substitution uses unknown ingredient '" +
                            (known(s.from) ? s.to : s.from) + "'");
    if (s.from == s.to) throw InvalidArgument("synthetic: planted substitution maps '" + s.from + "' to itself");
  }
  for (const auto& [name, w] : quality_weights)
    if (!known(name)) throw InvalidArgument("synthetic: quality weight for unknown ingredient '" + name + "'");
}

// ---------------------------------------------------------------------------
// Config encoding

inline nlohmann::ordered_json to_json(const SyntheticConfig& c) {
  nlohmann::ordered_json j;
  j["n_recipes"] = c.n_recipes;
  j["n_users"] = c.n_users;
  j["n_reviews"] = c.n_reviews;
  j["n_ingredients"] = c.n_ingredients;
  j["n_communities"] = c.n_communities;
  j["community_cohesion"] = c.community_cohesion;
  j["community_popularity"] = c.community_popularity;
  j["planted_substitutions"] = nlohmann::ordered_json::array();
  for (const auto& s : c.planted_substitutions)
    j["planted_substitutions"].push_back({{"from", s.from}, {"to", s.to}, {"probability", s.probability}});
  j["quality_weights"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.quality_weights) j["quality_weights"][k] = v;
  j["seed"] = c.seed;
  j["recipes_per_dish"] = c.recipes_per_dish;
  j["base_ingredients_min"] = c.base_ingredients_min;
  j["base_ingredients_max"] = c.base_ingredients_max;
  j["variant_drop"] = c.variant_drop;
  j["variant_extras_max"] = c.variant_extras_max;
  j["variant_substitution"] = c.variant_substitution;
  j["raters_per_dish_min"] = c.raters_per_dish_min;
  j["raters_per_dish_max"] = c.raters_per_dish_max;
  j["rate_probability"] = c.rate_probability;
  j["rating_base"] = c.rating_base;
  j["rating_noise"] = c.rating_noise;
  j["user_bias"] = c.user_bias;
  j["community_quality"] = c.community_quality;
  j["ingredient_quality_noise"] = c.ingredient_quality_noise;
  j["substitution_quality"] = c.substitution_quality;
  j["method_quality"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.method_quality) j["method_quality"][k] = v;
  j["health_quality"] = c.health_quality;
  j["nutrition_missing"] = c.nutrition_missing;
  j["template_fraction"] = c.template_fraction;
  j["region_fraction"] = c.region_fraction;
  return j;
}

/// Reads a config object; absent keys keep their defaults, unknown keys warn.
inline SyntheticConfig synthetic_config_from_json(const nlohmann::json& j, const std::string& where = "synthetic") {
  if (!j.is_object()) throw InvalidArgument(where + ": config must be an object");
  SyntheticConfig c;
  const auto known = to_json(c);
  try {
    for (const auto& [key, v] : j.items()) {
      if (!known.contains(key)) {
        log::warn(where + ": ignoring unknown key '" + key + "'");
        continue;
      }
      if (key == "planted_substitutions") {
        c.planted_substitutions.clear();
        for (const auto& s : v)
          c.planted_substitutions.push_back(
              {s.at("from").get<std::string>(), s.at("to").get<std::string>(), s.value("probability", 1.0)});
      } else if (key == "quality_weights") {
        c.quality_weights = v.get<std::map<std::string, double>>();
      } else if (key == "method_quality") {
        c.method_quality = v.get<std::map<std::string, double>>();
      }
    }
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("n_recipes", c.n_recipes);
    get("n_users", c.n_users);
    get("n_reviews", c.n_reviews);
    get("n_ingredients", c.n_ingredients);
    get("n_communities", c.n_communities);
    get("community_cohesion", c.community_cohesion);
    get("community_popularity", c.community_popularity);
    get("seed", c.seed);
    get("recipes_per_dish", c.recipes_per_dish);
    get("base_ingredients_min", c.base_ingredients_min);
    get("base_ingredients_max", c.base_ingredients_max);
    get("variant_drop", c.variant_drop);
    get("variant_extras_max", c.variant_extras_max);
    get("variant_substitution", c.variant_substitution);
    get("raters_per_dish_min", c.raters_per_dish_min);
    get("raters_per_dish_max", c.raters_per_dish_max);
    get("rate_probability", c.rate_probability);
    get("rating_base", c.rating_base);
    get("rating_noise", c.rating_noise);
    get("user_bias", c.user_bias);
    get("community_quality", c.community_quality);
    get("ingredient_quality_noise", c.ingredient_quality_noise);
    get("substitution_quality", c.substitution_quality);
    get("health_quality", c.health_quality);
    get("nutrition_missing", c.nutrition_missing);
    get("template_fraction", c.template_fraction);
    get("region_fraction", c.region_fraction);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(where + ": " + e.what());
  }
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------
// Generation

struct SyntheticCorpus {
  Corpus corpus;
  /// Modification events written into review texts, deduplicated per review.
  std::vector<ModificationEvent> ledger;
  std::vector<std::string> ingredient_names;   // bank prefix, generator order
  std::vector<std::size_t> community;          // per ingredient
  std::vector<double> quality;                 // per ingredient
  std::vector<std::size_t> dish;               // per recipe
  std::vector<std::vector<std::size_t>> recipe_ingredients;  // sorted bank indices
};

namespace detail {

inline constexpr std::array<std::string_view, 12> kDistractors = {
    "My family loved it.",        "Will make this again.",     "Great flavor overall.",
    "Easy to follow.",            "Perfect for a weeknight.",  "Thanks for sharing.",
    "The kids asked for seconds.", "Turned out really well.",   "Nice and simple.",
    "A new favorite at our house.", "Not bad at all.",          "Came together quickly."};

inline constexpr std::array<std::string_view, 6> kFillerDirections = {
    "Preheat the oven.", "Season to taste.", "Let stand ten minutes.", "Serve hot.",
    "Cover and set aside.", "Stir well."};

inline constexpr std::array<std::string_view, 8> kUnits = {"cup", "cups", "tablespoon", "teaspoon",
                                                           "pound", "ounces", "tsp", "tbsp"};
inline constexpr std::array<std::string_view, 6> kAmounts = {"1", "2", "3", "1/2", "1 1/2", "3/4"};

inline std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

inline std::string sentence(ModKind kind, const std::string& a, const std::string* b, Rng& rng) {
  auto pick = [&](std::initializer_list<const char*> opts) {
    return std::string(*(opts.begin() + static_cast<std::ptrdiff_t>(rng.below(opts.size()))));
  };
  std::string t;
  switch (kind) {
    case ModKind::AdjustUp: t = pick({"I used extra {a}.", "I doubled the {a}.", "Next time I would increase the {a}."}); break;
    case ModKind::AdjustDown: t = pick({"I used less {a}.", "I reduced the {a}.", "I cut back the {a}."}); break;
    case ModKind::Delete: t = pick({"I left out the {a}.", "I omitted the {a}.", "I skipped the {a}.", "I didn't have any {a}."}); break;
    case ModKind::Add: t = pick({"I added some {a}.", "I also added {a}.", "Adding {a} was a nice touch."}); break;
    case ModKind::Substitute:
      t = pick({"I replaced the {a} with {b}.", "I used {b} instead of {a}.", "I substituted {b} for {a}."});
      break;
  }
  auto put = [&](const std::string& slot, const std::string& v) {
    auto pos = t.find(slot);
    if (pos != std::string::npos) t.replace(pos, slot.size(), v);
  };
  put("{a}", a);
  if (b) put("{b}", *b);
  return t;
}

}  // namespace detail

inline SyntheticCorpus generate_synthetic(const SyntheticConfig& cfg) {
  cfg.validate();
  Rng rng = Rng::substream(cfg.seed, "corpus");
  const auto& bank = ingredient_bank();
  const std::size_t n_ing = cfg.n_ingredients, n_comm = cfg.n_communities;

  SyntheticCorpus out;
  out.ingredient_names.assign(bank.begin(), bank.begin() + static_cast<std::ptrdiff_t>(n_ing));
  out.community.resize(n_ing);
  std::vector<std::vector<std::size_t>> members(n_comm);
  for (std::size_t i = 0; i < n_ing; ++i) {
    out.community[i] = i * n_comm / n_ing;
    members[out.community[i]].push_back(i);
  }
  auto index_of = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(bank.begin(), bank.end(), name) - bank.begin());
  };

  // Ingredient quality: community level, ingredient noise, planted substitutions.
  out.quality.resize(n_ing);
  std::vector<double> comm_level(n_comm, 0.0);
  for (std::size_t c = 0; c < n_comm; ++c)
    comm_level[c] = n_comm == 1 ? 0.0 : cfg.community_quality * (2.0 * static_cast<double>(c) / (n_comm - 1) - 1.0);
  rng.shuffle(std::span<double>(comm_level));
  for (std::size_t i = 0; i < n_ing; ++i)
    out.quality[i] = comm_level[out.community[i]] + cfg.ingredient_quality_noise * rng.normal();
  struct Planted {
    std::size_t from, to;
    double p;
  };
  std::vector<Planted> planted;
  for (const auto& s : cfg.planted_substitutions) {
    planted.push_back({index_of(s.from), index_of(s.to), s.probability});
    out.quality[planted.back().from] -= cfg.substitution_quality;
    out.quality[planted.back().to] += cfg.substitution_quality;
  }
  for (const auto& [name, w] : cfg.quality_weights) out.quality[index_of(name)] = w;

  // Methods and regional preferences.
  static const std::vector<std::string> kMethods = {
      "bake", "boil", "simmer", "fry", "grill", "steam", "roast", "broil", "saute", "poach", "braise",
      "toast", "barbecue", "microwave", "stew", "sear", "smoke", "blanch", "chop", "grind", "slice",
      "dice", "mince", "mash", "whisk", "blend", "knead", "grate", "puree", "shred", "crush", "peel",
      "marinate", "brine", "pickle", "cure", "ferment"};
  auto method_bonus = [&](const std::string& m) {
    auto it = cfg.method_quality.find(m);
    return it == cfg.method_quality.end() ? 0.0 : it->second;
  };
  std::array<std::vector<std::size_t>, kRegions.size()> regional;
  for (auto& r : regional)
    for (int k = 0; k < 4; ++k) r.push_back(rng.below(kMethods.size()));

  auto draw = [&](std::size_t home) {
    if (rng.uniform() < cfg.community_cohesion) return members[home][rng.below(members[home].size())];
    return static_cast<std::size_t>(rng.below(n_ing));
  };

  std::vector<Recipe> recipes;
  std::vector<double> recipe_quality;
  recipes.reserve(cfg.n_recipes);
  const std::size_t n_dishes = (cfg.n_recipes + cfg.recipes_per_dish - 1) / cfg.recipes_per_dish;
  for (std::size_t d = 0; d < n_dishes; ++d) {
    std::size_t home = 0;
    if (cfg.community_popularity.empty()) {
      home = rng.below(n_comm);
    } else {
      double u = rng.uniform() * std::accumulate(cfg.community_popularity.begin(), cfg.community_popularity.end(), 0.0);
      while (home + 1 < n_comm && u >= cfg.community_popularity[home]) u -= cfg.community_popularity[home++];
    }
    std::vector<std::size_t> base;
    const std::size_t target = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(cfg.base_ingredients_min), static_cast<std::int64_t>(cfg.base_ingredients_max)));
    for (int guard = 0; base.size() < target && guard < 1000; ++guard) {
      auto i = draw(home);
      if (std::find(base.begin(), base.end(), i) == base.end()) base.push_back(i);
    }
    std::optional<Region> region;
    if (rng.uniform() < cfg.region_fraction) region = kRegions[rng.below(kRegions.size())];
    std::vector<std::size_t> base_methods;
    for (int k = 0; k < 2; ++k) {
      std::size_t m = region && rng.uniform() < 0.6 ? regional[static_cast<std::size_t>(*region)][rng.below(4)]
                                                   : rng.below(kMethods.size());
      if (std::find(base_methods.begin(), base_methods.end(), m) == base_methods.end()) base_methods.push_back(m);
    }

    for (std::size_t v = 0; v < cfg.recipes_per_dish && recipes.size() < cfg.n_recipes; ++v) {
      std::vector<std::size_t> ing;
      for (auto i : base)
        if (v == 0 || rng.uniform() >= cfg.variant_drop) ing.push_back(i);
      const std::size_t extras = v == 0 ? 0 : rng.below(cfg.variant_extras_max + 1);
      for (std::size_t k = 0; k < extras; ++k) {
        auto i = draw(home);
        if (std::find(ing.begin(), ing.end(), i) == ing.end()) ing.push_back(i);
      }
      for (const auto& p : planted) {
        auto it = std::find(ing.begin(), ing.end(), p.from);
        if (it == ing.end() || rng.uniform() >= cfg.variant_substitution) continue;
        if (std::find(ing.begin(), ing.end(), p.to) == ing.end())
          *it = p.to;
        else
          ing.erase(it);
      }
      if (ing.empty()) ing.push_back(base.front());

      Recipe r;
      char id[16];
      std::snprintf(id, sizeof id, "r%05zu", recipes.size() + 1);
      r.id = id;
      r.title = "dish " + std::to_string(d + 1) + " variant " + std::to_string(v + 1);
      for (auto i : ing) {
        std::string line = std::string(detail::kAmounts[rng.below(detail::kAmounts.size())]) + " " +
                           std::string(detail::kUnits[rng.below(detail::kUnits.size())]) + " ";
        if (rng.uniform() < 0.15) line += "chopped ";
        line += bank[i];
        if (rng.uniform() < 0.1) line += ", divided";
        r.ingredient_lines.push_back(line);
      }
      std::vector<std::size_t> methods;
      for (auto m : base_methods)
        if (v == 0 || rng.uniform() < 0.85) methods.push_back(m);
      if (v > 0 && rng.uniform() < 0.3) {
        auto m = rng.below(kMethods.size());
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
      }
      r.directions.push_back(std::string(detail::kFillerDirections[rng.below(detail::kFillerDirections.size())]));
      for (auto m : methods) r.directions.push_back(detail::capitalize(kMethods[m]) + " until done.");
      r.prep_minutes = static_cast<int>(rng.between(5, 60));
      r.cook_minutes = static_cast<int>(rng.between(0, 90));
      r.servings = static_cast<int>(rng.between(1, 12));
      r.region = region;

      const double health = rng.normal();
      const double n = static_cast<double>(ing.size());
      const std::array<double, 8> nut = {
          std::max(0.0, 60.0 * n * (1.0 - 0.15 * health) + 30.0 * rng.normal()),  // calories
          std::max(0.0, 2.0 * n * (1.0 - 0.2 * health) + rng.normal()),           // fat
          std::max(0.0, 6.0 * n + 3.0 * rng.normal()),                            // carbohydrates
          std::max(0.0, 2.5 * n + 1.5 * rng.normal()),                            // protein
          std::max(0.0, 90.0 * n * (1.0 - 0.2 * health) + 40.0 * rng.normal()),   // sodium
          std::max(0.0, 10.0 * n + 8.0 * rng.normal()),                           // cholesterol
          std::max(0.0, 2.0 + 1.2 * health + 0.5 * rng.normal()),                 // fiber
          std::max(0.0, 8.0 - 3.0 * health + 2.0 * rng.normal())};                // sugar
      for (std::size_t k = 0; k < kNutrients.size(); ++k)
        if (rng.uniform() >= cfg.nutrition_missing)
          r.nutrition[std::string(kNutrients[k])] = std::round(nut[k] * 100.0) / 100.0;

      double q = cfg.health_quality * health;
      for (auto i : ing) q += out.quality[i];
      for (auto m : methods) q += method_bonus(kMethods[m]);
      recipe_quality.push_back(q);
      std::sort(ing.begin(), ing.end());
      out.recipe_ingredients.push_back(ing);
      out.dish.push_back(d);
      recipes.push_back(std::move(r));
    }
  }
  double mean_q = 0.0;
  for (double q : recipe_quality) mean_q += q;
  mean_q /= static_cast<double>(recipe_quality.size());

  // Users.
  std::vector<std::string> users(cfg.n_users);
  std::vector<double> bias(cfg.n_users);
  for (std::size_t u = 0; u < cfg.n_users; ++u) {
    char id[16];
    std::snprintf(id, sizeof id, "u%05zu", u + 1);
    users[u] = id;
    bias[u] = cfg.user_bias * rng.normal();
  }

  std::vector<Review> reviews;
  reviews.reserve(cfg.n_reviews);
  auto add_review = [&](std::size_t recipe, std::size_t user) {
    Review v;
    v.recipe_id = recipes[recipe].id;
    v.user_id = users[user];
    const double latent = cfg.rating_base + recipe_quality[recipe] - mean_q + bias[user] + cfg.rating_noise * rng.normal();
    v.rating = static_cast<int>(std::clamp(std::llround(latent), 1LL, 5LL));
    v.helpful_votes = static_cast<int>(rng.below(4) == 0 ? rng.below(20) : 0);

    // Review text: modification sentences between distractors.
    std::vector<std::string> parts;
    parts.emplace_back(detail::kDistractors[rng.below(detail::kDistractors.size())]);
    const auto& ing = out.recipe_ingredients[recipe];
    if (rng.uniform() < cfg.template_fraction) {
      const std::size_t n_mods = rng.uniform() < 0.3 ? 2 : 1;
      for (std::size_t k = 0; k < n_mods; ++k) {
        ModificationEvent e;
        e.review_id = reviews.size();
        e.recipe_id = recipes[recipe].id;
        std::vector<const Planted*> cands;
        for (const auto& p : planted)
          if (std::binary_search(ing.begin(), ing.end(), p.from)) cands.push_back(&p);
        const double u = rng.uniform();
        const bool substitute = !cands.empty() ? u < 0.45 : u < 0.1;
        if (substitute) {
          e.kind = ModKind::Substitute;
          std::size_t a = ing[rng.below(ing.size())], b = a;
          if (!cands.empty()) {
            const auto* p = cands[rng.below(cands.size())];
            a = p->from;
            if (rng.uniform() < p->p) b = p->to;
          }
          if (b == a) {
            const auto& pool = members[out.community[a]];
            for (int guard = 0; guard < 100 && (b == a || std::binary_search(ing.begin(), ing.end(), b)); ++guard)
              b = pool[rng.below(pool.size())];
            if (b == a || std::binary_search(ing.begin(), ing.end(), b)) continue;
          }
          e.ingredient_a = bank[a];
          e.ingredient_b = bank[b];
        } else {
          const double w = rng.uniform();
          if (w < 0.3) {
            e.kind = ModKind::AdjustUp;
          } else if (w < 0.6) {
            e.kind = ModKind::AdjustDown;
          } else if (w < 0.8) {
            e.kind = ModKind::Delete;
          } else {
            e.kind = ModKind::Add;
          }
          if (e.kind == ModKind::Add) {
            const auto& pool = members[out.community[ing[rng.below(ing.size())]]];
            std::size_t y = pool[rng.below(pool.size())];
            if (std::binary_search(ing.begin(), ing.end(), y)) continue;
            e.ingredient_a = bank[y];
          } else {
            e.ingredient_a = bank[ing[rng.below(ing.size())]];
          }
        }
        const bool dup = std::any_of(out.ledger.rbegin(), out.ledger.rend(), [&](const ModificationEvent& o) {
          return o.review_id == e.review_id && o.kind == e.kind && o.ingredient_a == e.ingredient_a &&
                 o.ingredient_b == e.ingredient_b;
        });
        e.clause = detail::sentence(e.kind, e.ingredient_a, e.ingredient_b ? &*e.ingredient_b : nullptr, rng);
        parts.push_back(e.clause);
        if (!dup) out.ledger.push_back(e);
      }
    }
    if (rng.uniform() < 0.5) parts.emplace_back(detail::kDistractors[rng.below(detail::kDistractors.size())]);
    for (std::size_t k = 0; k < parts.size(); ++k) v.text += (k ? " " : "") + parts[k];
    reviews.push_back(std::move(v));
  };

  // Rating sessions per dish, then scattered reviews up to the total.
  std::size_t first = 0;
  for (std::size_t d = 0; d < n_dishes && reviews.size() < cfg.n_reviews; ++d) {
    std::size_t last = first;
    while (last < recipes.size() && out.dish[last] == d) ++last;
    const std::size_t n_raters = static_cast<std::size_t>(rng.between(
        static_cast<std::int64_t>(cfg.raters_per_dish_min), static_cast<std::int64_t>(cfg.raters_per_dish_max)));
    std::vector<std::size_t> raters;
    while (raters.size() < n_raters) {
      auto u = rng.below(cfg.n_users);
      if (std::find(raters.begin(), raters.end(), u) == raters.end()) raters.push_back(u);
    }
    for (auto u : raters)
      for (std::size_t r = first; r < last && reviews.size() < cfg.n_reviews; ++r)
        if (rng.uniform() < cfg.rate_probability) add_review(r, u);
    first = last;
  }
  while (reviews.size() < cfg.n_reviews) add_review(rng.below(recipes.size()), rng.below(cfg.n_users));

  out.corpus = Corpus(std::move(recipes), std::move(reviews));
  return out;
}

/// Agreement of extracted events with a generator ledger, matching on
/// (review, kind, ingredient_a, ingredient_b).
struct LedgerAgreement {
  std::size_t ledger = 0;
  std::size_t extracted = 0;
  std::size_t matched = 0;
  double precision() const { return extracted ? static_cast<double>(matched) / extracted : 1.0; }
  double recall() const { return ledger ? static_cast<double>(matched) / ledger : 1.0; }
};

inline LedgerAgreement compare_to_ledger(std::span<const ModificationEvent> ledger,
                                         std::span<const ModificationEvent> extracted) {
  using Key = std::tuple<std::size_t, ModKind, std::string, std::string>;
  auto key = [](const ModificationEvent& e) {
    return Key{e.review_id, e.kind, e.ingredient_a, e.ingredient_b.value_or("")};
  };
  std::set<Key> truth, found;
  for (const auto& e : ledger) truth.insert(key(e));
  for (const auto& e : extracted) found.insert(key(e));
  LedgerAgreement a{truth.size(), found.size(), 0};
  for (const auto& k : found) a.matched += truth.count(k);
  return a;
}

}  // namespace recipenet

#endif  // RECIPENET_SYNTHETIC_HPP_
