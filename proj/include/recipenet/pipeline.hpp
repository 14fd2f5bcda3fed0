// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

// End-to-end orchestration: corpus -> events -> networks -> pairs -> features
// -> boosted models -> tab-separated reports and a checksummed manifest.

#ifndef RECIPENET_PIPELINE_HPP_
#define RECIPENET_PIPELINE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "recipenet/centrality.hpp"
#include "recipenet/community.hpp"
#include "recipenet/corpus.hpp"
#include "recipenet/error.hpp"
#include "recipenet/features.hpp"
#include "recipenet/gbt.hpp"
#include "recipenet/ingredient_parser.hpp"
#include "recipenet/log.hpp"
#include "recipenet/networks.hpp"
#include "recipenet/pair_dataset.hpp"
#include "recipenet/review_miner.hpp"
#include "recipenet/rng.hpp"
#include "recipenet/rules.hpp"
#include "recipenet/stats.hpp"
#include "recipenet/synthetic.hpp"
#include "recipenet/text.hpp"

namespace recipenet {

inline constexpr std::string_view kVersion = "0.1.0";

enum class PreferencePairs { Gated, All };

struct PipelineConfig {
  // Exactly one corpus source: a recipes/reviews file pair or a generator config.
  std::optional<std::filesystem::path> recipes_path;
  std::optional<std::filesystem::path> reviews_path;
  std::optional<SyntheticConfig> synthetic;
  std::filesystem::path rules_path;

  std::size_t top_n = 1000;
  ComplementConfig complement;
  int substitute_min_count = 5;
  PreferencePairs preference_pairs = PreferencePairs::Gated;
  std::size_t svd_k = 50;
  double svd_tol = 1e-8;
  PairConfig pairs;
  GbtConfig gbt;
  double train_fraction = 2.0 / 3.0;
  /// Seeds root, root+1, ... for the accuracy spread of each condition.
  std::size_t variance_seeds = 5;
  std::vector<std::size_t> sweep_k = {5, 10, 20, 50, 100, 1000};
  std::size_t top_features = 100;
  std::size_t top_dimensions = 5;
  std::size_t dimension_ingredients = 6;

  std::filesystem::path out_dir = "recipenet-out";
  std::uint64_t seed = 1;
  unsigned threads = 1;

  void validate() const {
    if (synthetic.has_value() == (recipes_path.has_value() || reviews_path.has_value()))
      throw InvalidArgument("config: give either recipes/reviews paths or a synthetic section");
    if (!synthetic && (!recipes_path || !reviews_path))
      throw InvalidArgument("config: both recipes and reviews paths are required");
    if (synthetic) synthetic->validate();
    if (top_n == 0) throw InvalidArgument("config: top_n must be positive");
    if (complement.min_cooccurrence < 1) throw InvalidArgument("config: min_cooccurrence must be >= 1");
    if (substitute_min_count < 1) throw InvalidArgument("config: substitute_min_count must be >= 1");
    if (svd_k == 0) throw InvalidArgument("config: svd_k must be positive");
    if (!(svd_tol >= 0.0 && svd_tol < 1.0)) throw InvalidArgument("config: svd_tol must be in [0,1)");
    if (pairs.min_common < 1) throw InvalidArgument("config: min_common must be >= 1");
    if (!(pairs.majority_min >= 0.0 && pairs.majority_min < 1.0))
      throw InvalidArgument("config: majority_min must be in [0,1)");
    if (pairs.min_user_reviews < 0) throw InvalidArgument("config: min_user_reviews must be >= 0");
    gbt.validate();
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw InvalidArgument("config: train_fraction must be in (0,1)");
    if (variance_seeds == 0) throw InvalidArgument("config: variance_seeds must be positive");
    for (auto k : sweep_k)
      if (k == 0) throw InvalidArgument("config: sweep k values must be positive");
    if (threads == 0) throw InvalidArgument("config: threads must be positive");
    auto must_exist = [](const std::filesystem::path& p, const char* what) {
      if (!std::filesystem::is_regular_file(p))
        throw InvalidArgument(std::string("config: ") + what + " '" + p.string() + "' does not exist");
    };
    must_exist(rules_path, "rule file");
    if (recipes_path) must_exist(*recipes_path, "recipes file");
    if (reviews_path) must_exist(*reviews_path, "reviews file");
  }
};

/// Config echo for the manifest. The output directory is left out so that
/// bundles written to different places compare equal.
inline nlohmann::ordered_json to_json(const PipelineConfig& c) {
  nlohmann::ordered_json j;
  if (c.synthetic) {
    j["synthetic"] = to_json(*c.synthetic);
  } else {
    j["recipes"] = c.recipes_path->filename().string();
    j["reviews"] = c.reviews_path->filename().string();
  }
  j["rules"] = c.rules_path.filename().string();
  j["top_n"] = c.top_n;
  j["complement"] = {{"pmi_threshold", c.complement.pmi_threshold}, {"min_cooccurrence", c.complement.min_cooccurrence}};
  j["substitute_min_count"] = c.substitute_min_count;
  j["preference_pairs"] = c.preference_pairs == PreferencePairs::Gated ? "gated" : "all";
  j["svd_k"] = c.svd_k;
  j["svd_tol"] = c.svd_tol;
  j["pairs"] = {{"sim_min", c.pairs.sim_min},
                {"min_common", c.pairs.min_common},
                {"majority_min", c.pairs.majority_min},
                {"min_user_reviews", c.pairs.min_user_reviews}};
  j["gbt"] = {{"n_trees", c.gbt.n_trees},
              {"max_leaves", c.gbt.max_leaves},
              {"shrinkage", c.gbt.shrinkage},
              {"subsample_fraction", c.gbt.subsample_fraction},
              {"min_samples_leaf", c.gbt.min_samples_leaf}};
  j["train_fraction"] = c.train_fraction;
  j["variance_seeds"] = c.variance_seeds;
  j["sweep_k"] = c.sweep_k;
  j["top_features"] = c.top_features;
  j["top_dimensions"] = c.top_dimensions;
  j["dimension_ingredients"] = c.dimension_ingredients;
  j["seed"] = c.seed;
  return j;
}

/// Reads a pipeline config. Relative paths are taken against `base_dir`;
/// unknown keys warn.
inline PipelineConfig pipeline_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                                const std::string& where = "config") {
  if (!j.is_object()) throw InvalidArgument(where + ": expected a JSON object");
  static const std::vector<std::string> known = {
      "recipes", "reviews", "synthetic", "rules", "top_n", "complement", "substitute_min_count",
      "preference_pairs", "svd_k", "svd_tol", "pairs", "gbt", "train_fraction", "variance_seeds", "sweep_k",
      "top_features", "top_dimensions", "dimension_ingredients", "out", "seed", "threads"};
  for (const auto& [key, v] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      log::warn(where + ": ignoring unknown key '" + key + "'");
  auto path = [&](const nlohmann::json& v) {
    std::filesystem::path p = v.get<std::string>();
    return p.is_absolute() ? p : base_dir / p;
  };
  PipelineConfig c;
  try {
    if (j.contains("recipes")) c.recipes_path = path(j.at("recipes"));
    if (j.contains("reviews")) c.reviews_path = path(j.at("reviews"));
    if (j.contains("synthetic")) c.synthetic = synthetic_config_from_json(j.at("synthetic"), where + ".synthetic");
    if (!j.contains("rules")) throw InvalidArgument(where + ": missing 'rules'");
    c.rules_path = path(j.at("rules"));
    auto get = [](const nlohmann::json& o, const char* key, auto& field) {
      if (o.contains(key)) field = o.at(key).get<std::decay_t<decltype(field)>>();
    };
    get(j, "top_n", c.top_n);
    if (j.contains("complement")) {
      get(j["complement"], "pmi_threshold", c.complement.pmi_threshold);
      get(j["complement"], "min_cooccurrence", c.complement.min_cooccurrence);
    }
    get(j, "substitute_min_count", c.substitute_min_count);
    if (j.contains("preference_pairs")) {
      const auto v = j.at("preference_pairs").get<std::string>();
      if (v == "gated") {
        c.preference_pairs = PreferencePairs::Gated;
      } else if (v == "all") {
        c.preference_pairs = PreferencePairs::All;
      } else {
        throw InvalidArgument(where + ": preference_pairs must be 'gated' or 'all'");
      }
    }
    get(j, "svd_k", c.svd_k);
    get(j, "svd_tol", c.svd_tol);
    if (j.contains("pairs")) {
      const auto& p = j["pairs"];
      get(p, "sim_min", c.pairs.sim_min);
      get(p, "min_common", c.pairs.min_common);
      get(p, "majority_min", c.pairs.majority_min);
      get(p, "min_user_reviews", c.pairs.min_user_reviews);
    }
    if (j.contains("gbt")) {
      const auto& g = j["gbt"];
      get(g, "n_trees", c.gbt.n_trees);
      get(g, "max_leaves", c.gbt.max_leaves);
      get(g, "shrinkage", c.gbt.shrinkage);
      get(g, "subsample_fraction", c.gbt.subsample_fraction);
      get(g, "min_samples_leaf", c.gbt.min_samples_leaf);
    }
    get(j, "train_fraction", c.train_fraction);
    get(j, "variance_seeds", c.variance_seeds);
    get(j, "sweep_k", c.sweep_k);
    get(j, "top_features", c.top_features);
    get(j, "top_dimensions", c.top_dimensions);
    get(j, "dimension_ingredients", c.dimension_ingredients);
    if (j.contains("out")) c.out_dir = path(j.at("out"));
    get(j, "seed", c.seed);
    get(j, "threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(where + ": " + e.what());
  }
  return c;
}

inline PipelineConfig load_pipeline_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InvalidArgument("cannot open config file " + file.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(file.string() + ": malformed JSON: " + e.what());
  }
  return pipeline_config_from_json(j, file.parent_path(), file.string());
}

// ---------------------------------------------------------------------------
// Results

struct ConditionResult {
  std::string name;
  std::size_t n_features = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  double train_accuracy = 0.0;
  double accuracy = 0.0;
};

struct VarianceRow {
  std::string condition;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
};

struct SweepRow {
  std::string networks;  // a network name or "all"
  std::size_t k_requested = 0;
  std::size_t k = 0;
  std::size_t n_features = 0;
  double accuracy = 0.0;
};

struct DimensionReport {
  std::size_t dimension = 0;
  double importance = 0.0;
  std::vector<std::pair<std::string, double>> ingredients;  // (name, squared loading)
};

struct ImportanceReport {
  std::array<double, kFeatureGroups.size()> group_share{};
  std::vector<std::pair<std::string, double>> top;  // by importance, ties by name
  std::vector<DimensionReport> substitute_dimensions;
};

/// Group shares, the `top_n` most important features, and for the most
/// important substitute-network community dimensions the ingredients with the
/// largest squared loadings. `substitute` may be null.
inline ImportanceReport report_importance(const BoostedEnsemble& model, const NetworkSummary* substitute,
                                          const std::vector<std::string>& ingredient_names,
                                          std::size_t top_n = 100, std::size_t top_dimensions = 5,
                                          std::size_t per_dimension = 6) {
  const auto imp = relative_importance(model);
  ImportanceReport r;
  std::vector<std::size_t> order(imp.size());
  for (std::size_t j = 0; j < imp.size(); ++j) {
    r.group_share[static_cast<std::size_t>(group_of_feature(model.feature_names[j]))] += imp[j];
    order[j] = j;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (imp[a] != imp[b]) return imp[a] > imp[b];
    return model.feature_names[a] < model.feature_names[b];
  });
  for (std::size_t j : order) {
    if (r.top.size() >= top_n || !(imp[j] > 0.0)) break;
    r.top.emplace_back(model.feature_names[j], imp[j]);
  }
  if (!substitute || !substitute->has_basis) return r;

  const std::string prefix = "community." + std::string(to_string(NetworkKind::Substitute)) + ".";
  std::map<std::size_t, double> by_dim;
  for (std::size_t j = 0; j < imp.size(); ++j) {
    std::string_view name = model.feature_names[j];
    if (name.size() > 2 && name[1] == '.') name.remove_prefix(2);
    if (!text::starts_with(name, prefix) || !(imp[j] > 0.0)) continue;
    by_dim[std::stoul(std::string(name.substr(prefix.size())))] += imp[j];
  }
  std::vector<std::pair<std::size_t, double>> dims(by_dim.begin(), by_dim.end());
  std::stable_sort(dims.begin(), dims.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  const auto& v = substitute->basis.right;
  for (const auto& [d, w] : dims) {
    if (r.substitute_dimensions.size() >= top_dimensions) break;
    if (d >= substitute->basis.k) continue;
    DimensionReport dr{d, w, {}};
    std::vector<std::size_t> ids(v.rows);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    auto sq = [&](std::size_t i) { return v(i, d) * v(i, d); };
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) { return sq(a) > sq(b); });
    for (std::size_t t = 0; t < std::min(per_dimension, ids.size()); ++t)
      dr.ingredients.emplace_back(ingredient_names.at(ids[t]), sq(ids[t]));
    r.substitute_dimensions.push_back(std::move(dr));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Pipeline

/// Runs `body`, rethrowing any failure as a StageError naming `stage`.
template <class F>
decltype(auto) run_stage(const char* stage, F&& body) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

struct Networks {
  CooccurrenceCounts counts;
  WeightedDiGraph cooccurrence, complement, substitute, preference;
};

/// Lazily computed stages over one configuration. Every accessor computes its
/// prerequisites on first use.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig cfg) : cfg_(std::move(cfg)) {
    run_stage("config", [&] { cfg_.validate(); });
    cfg_.gbt.seed = cfg_.seed;
    if (cfg_.synthetic) cfg_.synthetic->seed = cfg_.seed;
  }

  const PipelineConfig& config() const { return cfg_; }

  const Corpus& corpus() {
    if (!corpus_) {
      run_stage("parse", [&] {
        rules_ = RuleSet::load(cfg_.rules_path);
        norm_ = NormalizationRules::from(*rules_);
        if (cfg_.synthetic) {
          synthetic_ = generate_synthetic(*cfg_.synthetic);
          corpus_ = synthetic_->corpus;
        } else {
          corpus_ = load_corpus(*cfg_.recipes_path, *cfg_.reviews_path);
        }
        if (corpus_->recipes().empty()) throw InvalidArgument("corpus has no recipes");
        vocab_ = build_vocabulary(*corpus_, cfg_.top_n, *norm_);
        sets_ = recipe_sets(*corpus_, *vocab_, *norm_);
      });
    }
    return *corpus_;
  }

  /// Generator output when the corpus is synthetic, else null.
  const SyntheticCorpus* synthetic() {
    corpus();
    return synthetic_ ? &*synthetic_ : nullptr;
  }

  const RuleSet& rules() { return corpus(), *rules_; }
  const Vocabulary& vocabulary() { return corpus(), *vocab_; }
  const RecipeSets& sets() { return corpus(), *sets_; }

  const std::vector<ModificationEvent>& events() {
    if (!events_) {
      corpus();
      run_stage("mine", [&] {
        ReviewMiner miner(*vocab_, MinerLexicon::from(*rules_));
        events_ = mine_corpus(*corpus_, miner, *norm_);
      });
    }
    return *events_;
  }

  const std::vector<RecipePair>& pairs() {
    if (!pairs_) {
      corpus();
      run_stage("pairs", [&] {
        idf_ = idf_table(*sets_, vocab_->size());
        pairs_ = generate_pairs(*corpus_, *sets_, *idf_, cfg_.pairs);
      });
    }
    return *pairs_;
  }

  const Networks& networks() {
    if (!networks_) {
      events();
      const auto& gated = pairs();
      run_stage("networks", [&] {
        Networks n;
        n.counts = CooccurrenceCounts::from(*sets_, vocab_->size());
        n.cooccurrence = build_cooccurrence(n.counts, vocab_->names());
        n.complement = build_complement(n.counts, vocab_->names(), cfg_.complement);
        n.substitute = build_substitute(*events_, *vocab_, cfg_.substitute_min_count);
        std::vector<RecipePair> source;
        if (cfg_.preference_pairs == PreferencePairs::All) {
          PairConfig all = cfg_.pairs;
          all.sim_min = -1.0;
          source = generate_pairs(*corpus_, *sets_, *idf_, all);
        } else {
          source = gated;
        }
        std::vector<RatedPair> rated;
        rated.reserve(source.size());
        for (const auto& p : source) rated.push_back({p.recipe_hi, p.recipe_lo});
        n.preference = rated.empty() ? WeightedDiGraph(NetworkKind::Preference, vocab_->names())
                                     : build_preference(*sets_, n.counts, rated, vocab_->names());
        networks_ = std::move(n);
      });
    }
    return *networks_;
  }

  /// Community dimensions kept per network: the largest of svd_k and the
  /// sweep values, clamped to the vocabulary size.
  std::size_t table_k() {
    std::size_t k = cfg_.svd_k;
    for (auto s : cfg_.sweep_k) k = std::max(k, s);
    return std::min(k, vocabulary().size());
  }

  const FeatureContext& context() {
    if (!context_) {
      networks();
      run_stage("features", [&] {
        FeatureContext ctx{MethodLexicon::from(*rules_), vocab_->names(), {}, table_k()};
        CentralityOptions opt;
        opt.threads = cfg_.threads;
        std::uint64_t stream = 0;
        for (const auto* g : {&networks_->cooccurrence, &networks_->complement, &networks_->substitute}) {
          SvdOptions so;
          so.tol = cfg_.svd_tol;
          so.seed = cfg_.seed + stream++;
          ctx.networks.push_back(summarize_network(*g, ctx.community_k, so, opt));
          if (ctx.networks.back().has_basis && !ctx.networks.back().basis.converged)
            log::warn("svd of the " + std::string(to_string(g->kind())) + " network did not converge");
        }
        context_ = std::move(ctx);
      });
    }
    return *context_;
  }

  const FeatureTable& table() {
    if (!table_) {
      context();
      run_stage("features", [&] { table_ = FeatureTable::build(*context_, *corpus_, *sets_); });
    }
    return *table_;
  }

  TrainTestSplit split(std::uint64_t seed) {
    const auto n = pairs().size();
    return run_stage("train", [&] { return split_train_test(n, cfg_.train_fraction, seed); });
  }

  /// Pair dataset of one condition (community dimensions limited to svd_k).
  Dataset condition_dataset(const Condition& c, const TrainTestSplit& s) {
    const auto& t = table();
    return run_stage("features", [&] {
      return build_pair_dataset(t, *pairs_, t.select(c.groups, std::min(cfg_.svd_k, table_k())), s.swapped);
    });
  }

  /// Trains and tests every condition on the same split and seed.
  std::vector<ConditionResult> run_conditions(std::uint64_t seed, std::map<std::string, BoostedEnsemble>* models = nullptr) {
    auto s = split(seed);
    std::vector<ConditionResult> out;
    for (const auto& c : conditions()) {
      auto d = condition_dataset(c, s);
      auto [train_set, test_set] = std::pair{d.subset(s.train), d.subset(s.test)};
      GbtConfig g = cfg_.gbt;
      g.seed = seed;
      auto m = run_stage("train", [&] { return train(train_set, g); });
      ConditionResult r{c.name, d.cols, train_set.rows, test_set.rows, 0.0, 0.0};
      run_stage("evaluate", [&] {
        r.train_accuracy = evaluate(m, train_set);
        r.accuracy = evaluate(m, test_set);
      });
      out.push_back(r);
      if (models) models->emplace(c.name, std::move(m));
    }
    return out;
  }

  /// Accuracy per condition across seeds root, root+1, ...
  std::vector<VarianceRow> run_variance(const std::vector<ConditionResult>& first) {
    std::vector<VarianceRow> out;
    for (const auto& r : first) out.push_back({r.name, cfg_.seed, r.accuracy});
    for (std::size_t i = 1; i < cfg_.variance_seeds; ++i)
      for (const auto& r : run_conditions(cfg_.seed + i)) out.push_back({r.name, cfg_.seed + i, r.accuracy});
    std::stable_sort(out.begin(), out.end(), [](const VarianceRow& a, const VarianceRow& b) {
      return condition_rank(a.condition) < condition_rank(b.condition);
    });
    return out;
  }

  /// Baseline plus community features of one network (or all three) for each
  /// k, on the root split. k beyond the vocabulary size is clamped with a warning.
  std::vector<SweepRow> run_sweep(const std::vector<std::size_t>& ks) {
    const auto& t = table();
    const std::size_t vocab = vocabulary().size();
    auto s = split(cfg_.seed);
    std::vector<std::size_t> clamped;
    for (auto k : ks) {
      if (k == 0) throw StageError("sweep", "k must be positive");
      if (k > vocab) log::warn("sweep: k=" + std::to_string(k) + " exceeds the vocabulary size; clamped to " + std::to_string(vocab));
      clamped.push_back(std::min(k, std::min(vocab, t.community_k())));
    }
    std::vector<SweepRow> out;
    const std::vector<std::string> subsets = {std::string(to_string(NetworkKind::Cooccurrence)),
                                              std::string(to_string(NetworkKind::Complement)),
                                              std::string(to_string(NetworkKind::Substitute)), "all"};
    for (const auto& subset : subsets) {
      for (std::size_t i = 0; i < ks.size(); ++i) {
        const std::size_t k = clamped[i];
        std::vector<std::size_t> cols;
        for (std::size_t c : t.select(std::vector<FeatureGroup>{FeatureGroup::Baseline, FeatureGroup::NetCommunity}, k)) {
          const auto& name = t.names()[c];
          if (t.groups()[c] == FeatureGroup::NetCommunity && subset != "all" &&
              !text::starts_with(name, "community." + subset + "."))
            continue;
          cols.push_back(c);
        }
        auto d = run_stage("sweep", [&] { return build_pair_dataset(t, *pairs_, cols, s.swapped); });
        auto train_set = d.subset(s.train), test_set = d.subset(s.test);
        auto m = run_stage("sweep", [&] { return train(train_set, cfg_.gbt); });
        out.push_back({subset, ks[i], k, d.cols, run_stage("sweep", [&] { return evaluate(m, test_set); })});
      }
    }
    return out;
  }

  static std::size_t condition_rank(const std::string& name) {
    for (std::size_t i = 0; i < conditions().size(); ++i)
      if (conditions()[i].name == name) return i;
    return conditions().size();
  }

 private:
  PipelineConfig cfg_;
  std::optional<RuleSet> rules_;
  std::optional<NormalizationRules> norm_;
  std::optional<SyntheticCorpus> synthetic_;
  std::optional<Corpus> corpus_;
  std::optional<Vocabulary> vocab_;
  std::optional<RecipeSets> sets_;
  std::optional<std::vector<ModificationEvent>> events_;
  std::optional<std::vector<double>> idf_;
  std::optional<std::vector<RecipePair>> pairs_;
  std::optional<Networks> networks_;
  std::optional<FeatureContext> context_;
  std::optional<FeatureTable> table_;
};

// ---------------------------------------------------------------------------
// Reports

/// Writes report files into one directory and remembers them for the manifest.
class ReportWriter {
 public:
  explicit ReportWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw StageError("report", "cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  const std::filesystem::path& dir() const { return dir_; }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::ostringstream buf;
    body(buf);
    const std::string content = buf.str();
    std::ofstream out(dir_ / name, std::ios::binary);
    out << content;
    if (!out) throw StageError("report", "cannot write " + (dir_ / name).string());
    files_[name] = {content.size(), fnv1a64(content)};
  }

  /// manifest.json: version, config echo and a checksum per written file.
  void write_manifest(const nlohmann::ordered_json& config) {
    nlohmann::ordered_json m;
    m["tool"] = "recipenet";
    m["version"] = std::string(kVersion);
    m["model_format"] = kModelFormatVersion;
    m["config"] = config;
    m["files"] = nlohmann::ordered_json::array();
    for (const auto& [name, info] : files_) {
      char hex[17];
      std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(info.second));
      m["files"].push_back({{"name", name}, {"bytes", info.first}, {"fnv1a64", hex}});
    }
    std::ofstream out(dir_ / "manifest.json", std::ios::binary);
    out << m.dump(2) << '\n';
    if (!out) throw StageError("report", "cannot write manifest");
  }

  const std::map<std::string, std::pair<std::size_t, std::uint64_t>>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::pair<std::size_t, std::uint64_t>> files_;
};

namespace report {

inline std::string num(double v) { return text::format_double(v); }
inline std::string opt(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

inline void corpus_summary(ReportWriter& w, Pipeline& p) {
  const auto& c = p.corpus();
  std::set<std::string> users;
  for (const auto& v : c.reviews()) users.insert(v.user_id);
  w.write("corpus.tsv", [&](std::ostream& o) {
    o << "statistic\tvalue\n";
    o << "recipes\t" << c.recipes().size() << '\n';
    o << "reviews\t" << c.reviews().size() << '\n';
    o << "users\t" << users.size() << '\n';
    o << "vocabulary\t" << p.vocabulary().size() << '\n';
    o << "vocabulary_coverage\t" << num(vocabulary_coverage(c, p.vocabulary(), NormalizationRules::from(p.rules()))) << '\n';
  });
  w.write("vocabulary.tsv", [&](std::ostream& o) {
    o << "ingredient\trecipes\n";
    const auto& v = p.vocabulary();
    for (std::size_t i = 0; i < v.size(); ++i) o << v.names()[i] << '\t' << v.frequency(i) << '\n';
  });
}

inline void mining(ReportWriter& w, Pipeline& p) {
  const auto& ev = p.events();
  w.write("events.jsonl", [&](std::ostream& o) { write_events(o, ev); });
  const auto stats = modification_stats(ev, p.vocabulary());
  w.write("modification_stats.tsv", [&](std::ostream& o) {
    o << "ingredient";
    for (auto c : kModStatColumns) o << '\t' << c;
    o << "\taddition_rate\tdeletion_rate\n";
    for (std::size_t i = 0; i < stats.names.size(); ++i) {
      const auto& c = stats.counts[i];
      o << stats.names[i] << '\t' << c.recipe_frequency << '\t' << c.additions << '\t' << c.deletions << '\t'
        << c.increases << '\t' << c.decreases << '\t' << opt(ModificationStats::rate(c.additions, c.recipe_frequency))
        << '\t' << opt(ModificationStats::rate(c.deletions, c.recipe_frequency)) << '\n';
    }
  });
  std::size_t by_kind[kModKinds.size()] = {};
  for (const auto& e : ev) ++by_kind[static_cast<std::size_t>(e.kind)];
  const auto lex = MinerLexicon::from(p.rules());
  std::size_t detected = 0;
  for (const auto& v : p.corpus().reviews()) detected += detect_modification(v.text, lex.signals);
  w.write("modification_summary.tsv", [&](std::ostream& o) {
    o << "statistic\tvalue\n";
    o << "reviews\t" << p.corpus().reviews().size() << '\n';
    o << "reviews_with_signal\t" << detected << '\n';
    for (auto k : kModKinds) o << "events." << to_string(k) << '\t' << by_kind[static_cast<std::size_t>(k)] << '\n';
  });
  if (const auto* s = p.synthetic()) {
    w.write("ledger.jsonl", [&](std::ostream& o) { write_events(o, s->ledger); });
    const auto a = compare_to_ledger(s->ledger, ev);
    w.write("extractor_agreement.tsv", [&](std::ostream& o) {
      o << "ledger_events\textracted_events\tmatched\tprecision\trecall\n";
      o << a.ledger << '\t' << a.extracted << '\t' << a.matched << '\t' << num(a.precision()) << '\t' << num(a.recall()) << '\n';
    });
  }
}

inline void networks(ReportWriter& w, Pipeline& p) {
  const auto& n = p.networks();
  const auto& ctx = p.context();
  const WeightedDiGraph* graphs[] = {&n.cooccurrence, &n.complement, &n.substitute, &n.preference};
  for (const auto* g : graphs)
    w.write("edges." + std::string(to_string(g->kind())) + ".tsv", [&](std::ostream& o) {
      o << "from\tto\tweight\n";
      write_edge_list(o, *g);
    });
  Partition part;
  if (!n.complement.empty()) part = detect_communities(n.complement, p.config().seed);
  PmiRatingCorrelation rho;
  bool rho_ok = true;
  try {
    rho = pmi_rating_correlation(p.corpus(), p.sets(), n.counts);
  } catch (const Undefined&) {
    rho_ok = false;
  }
  std::optional<double> pref_sub;
  if (common_edge_count(n.preference, n.substitute) >= 3) {
    try {
      pref_sub = edge_correlation(n.preference, n.substitute);
    } catch (const Error&) {
    }
  }
  w.write("networks.tsv", [&](std::ostream& o) {
    o << "statistic\tvalue\n";
    for (const auto* g : graphs) o << "edges." << to_string(g->kind()) << '\t' << g->edge_count() << '\n';
    for (const auto& s : ctx.networks)
      o << "svd_rank." << to_string(s.kind) << '\t' << (s.has_basis ? s.basis.k : 0) << '\n';
    o << "complement.communities\t" << part.count << '\n';
    o << "complement.modularity\t" << num(part.modularity) << '\n';
    o << "preference_substitute.common_edges\t" << common_edge_count(n.preference, n.substitute) << '\n';
    o << "preference_substitute.correlation\t" << opt(pref_sub) << '\n';
    o << "pmi_rating.recipes\t" << (rho_ok ? rho.recipes : 0) << '\n';
    o << "pmi_rating.min\t" << (rho_ok ? opt(rho.min) : "NA") << '\n';
    o << "pmi_rating.avg\t" << (rho_ok ? opt(rho.avg) : "NA") << '\n';
    o << "pmi_rating.max\t" << (rho_ok ? opt(rho.max) : "NA") << '\n';
  });
  w.write("communities.tsv", [&](std::ostream& o) {
    o << "ingredient\tcommunity\n";
    for (std::size_t i = 0; i < part.community.size(); ++i) o << n.complement.node(i) << '\t' << part.community[i] << '\n';
  });
  w.write("centrality.tsv", [&](std::ostream& o) {
    o << "ingredient";
    for (const auto& s : ctx.networks)
      for (auto c : kCentralities) o << '\t' << to_string(s.kind) << '.' << to_string(c);
    o << '\n';
    for (std::size_t i = 0; i < ctx.ingredient_names.size(); ++i) {
      o << ctx.ingredient_names[i];
      for (const auto& s : ctx.networks)
        for (std::size_t c = 0; c < kCentralities.size(); ++c) o << '\t' << num(s.centrality[c][i]);
      o << '\n';
    }
  });
}

inline void pairs(ReportWriter& w, Pipeline& p) {
  const auto& ps = p.pairs();
  w.write("pairs.tsv", [&](std::ostream& o) {
    o << "recipe_hi\trecipe_lo\tsimilarity\tcommon_raters\tmajority_fraction\n";
    write_pairs(o, p.corpus(), ps);
  });
}

inline void features(ReportWriter& w, Pipeline& p) {
  auto s = p.split(p.config().seed);
  auto d = p.condition_dataset(find_condition("combined"), s);
  w.write("features.combined.tsv", [&](std::ostream& o) { write_feature_matrix(o, d); });
}

inline void conditions(ReportWriter& w, const std::vector<ConditionResult>& rows) {
  w.write("conditions.tsv", [&](std::ostream& o) {
    o << "condition\tfeatures\ttrain_rows\ttest_rows\ttrain_accuracy\taccuracy\n";
    for (const auto& r : rows)
      o << r.name << '\t' << r.n_features << '\t' << r.train_rows << '\t' << r.test_rows << '\t'
        << num(r.train_accuracy) << '\t' << num(r.accuracy) << '\n';
  });
}

inline void variance(ReportWriter& w, const std::vector<VarianceRow>& rows) {
  w.write("variance.tsv", [&](std::ostream& o) {
    o << "condition\tseed\taccuracy\n";
    for (const auto& r : rows) o << r.condition << '\t' << r.seed << '\t' << num(r.accuracy) << '\n';
  });
  w.write("variance_summary.tsv", [&](std::ostream& o) {
    o << "condition\tseeds\tmean\tsd\n";
    for (const auto& c : recipenet::conditions()) {
      std::vector<double> acc;
      for (const auto& r : rows)
        if (r.condition == c.name) acc.push_back(r.accuracy);
      if (acc.empty()) continue;
      o << c.name << '\t' << acc.size() << '\t' << num(stats::mean(acc)) << '\t'
        << (acc.size() > 1 ? num(std::sqrt(stats::sample_variance(acc))) : "NA") << '\n';
    }
  });
}

inline void sweep(ReportWriter& w, const std::vector<SweepRow>& rows) {
  w.write("sweep.tsv", [&](std::ostream& o) {
    o << "networks\tk_requested\tk\tfeatures\taccuracy\n";
    for (const auto& r : rows)
      o << r.networks << '\t' << r.k_requested << '\t' << r.k << '\t' << r.n_features << '\t' << num(r.accuracy) << '\n';
  });
}

inline void importance(ReportWriter& w, const ImportanceReport& r, const std::string& tag) {
  w.write("importance_groups." + tag + ".tsv", [&](std::ostream& o) {
    o << "group\tshare\n";
    for (auto g : kFeatureGroups) o << to_string(g) << '\t' << num(r.group_share[static_cast<std::size_t>(g)]) << '\n';
  });
  w.write("importance_features." + tag + ".tsv", [&](std::ostream& o) {
    o << "rank\tfeature\tgroup\timportance\n";
    for (std::size_t i = 0; i < r.top.size(); ++i)
      o << i + 1 << '\t' << r.top[i].first << '\t' << to_string(group_of_feature(r.top[i].first)) << '\t'
        << num(r.top[i].second) << '\n';
  });
  w.write("substitute_dimensions." + tag + ".tsv", [&](std::ostream& o) {
    o << "dimension\timportance\trank\tingredient\tintensity\n";
    for (const auto& d : r.substitute_dimensions)
      for (std::size_t i = 0; i < d.ingredients.size(); ++i)
        o << d.dimension << '\t' << num(d.importance) << '\t' << i + 1 << '\t' << d.ingredients[i].first << '\t'
          << num(d.ingredients[i].second) << '\n';
  });
}

inline ImportanceReport importance_of(Pipeline& p, const BoostedEnsemble& m) {
  return run_stage("report", [&] {
    const auto& ctx = p.context();
    const NetworkSummary* sub = nullptr;
    for (const auto& s : ctx.networks)
      if (s.kind == NetworkKind::Substitute) sub = &s;
    return report_importance(m, sub, ctx.ingredient_names, p.config().top_features, p.config().top_dimensions,
                             p.config().dimension_ingredients);
  });
}

}  // namespace report

struct PipelineResult {
  std::vector<ConditionResult> conditions;
  std::vector<VarianceRow> variance;
  std::vector<SweepRow> sweep;
  ImportanceReport importance;
  std::filesystem::path out_dir;
};

/// parse -> mine -> networks -> pairs -> features -> train -> evaluate, with
/// every report written to cfg.out_dir.
inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  Pipeline p(cfg);
  ReportWriter w(cfg.out_dir);
  report::corpus_summary(w, p);
  report::mining(w, p);
  report::networks(w, p);
  report::pairs(w, p);
  report::features(w, p);

  PipelineResult r;
  r.out_dir = cfg.out_dir;
  std::map<std::string, BoostedEnsemble> models;
  r.conditions = p.run_conditions(cfg.seed, &models);
  report::conditions(w, r.conditions);
  const auto& combined = models.at("combined");
  w.write("model.combined.txt", [&](std::ostream& o) { save_model(o, combined); });
  r.importance = report::importance_of(p, combined);
  report::importance(w, r.importance, "combined");
  r.variance = p.run_variance(r.conditions);
  report::variance(w, r.variance);
  r.sweep = p.run_sweep(cfg.sweep_k);
  report::sweep(w, r.sweep);
  w.write_manifest(to_json(p.config()));
  return r;
}

}  // namespace recipenet

#endif  // RECIPENET_PIPELINE_HPP_
