// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "recipenet/pipeline.hpp"

namespace rn = recipenet;
namespace fs = std::filesystem;

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::optional<std::size_t> svd_k;
  std::optional<std::string> preference_pairs;
};

fs::path demo_config_path() { return fs::path(RECIPENET_DATA_DIR) / "demo_config.json"; }

rn::PipelineConfig resolve(const Globals& g, bool demo_default) {
  fs::path file = g.config;
  if (file.empty()) {
    if (!demo_default) throw rn::StageError("config", "--config is required for this command");
    file = demo_config_path();
  }
  auto cfg = rn::run_stage("config", [&] { return rn::load_pipeline_config(file); });
  if (g.seed) cfg.seed = *g.seed;
  if (g.out) cfg.out_dir = *g.out;
  if (g.threads) cfg.threads = *g.threads;
  if (g.svd_k) cfg.svd_k = *g.svd_k;
  if (g.preference_pairs) cfg.preference_pairs = *g.preference_pairs == "all" ? rn::PreferencePairs::All : rn::PreferencePairs::Gated;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recipe ingredient networks and rating-pair prediction"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Pipeline configuration (JSON)");
  app.add_option("--seed", g.seed, "Root random seed");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--threads", g.threads, "Worker threads (speed only)")->check(CLI::PositiveNumber);
  app.add_option("--svd-k", g.svd_k, "Community dimensions per network")->check(CLI::PositiveNumber);
  app.add_option("--preference-pairs", g.preference_pairs, "Recipe pairs feeding the preference network")
      ->check(CLI::IsMember({"gated", "all"}));

  auto* parse = app.add_subcommand("parse", "Load the corpus and build the ingredient vocabulary");
  auto* mine = app.add_subcommand("mine", "Extract modification events from reviews");
  auto* networks = app.add_subcommand("networks", "Build ingredient networks, centralities and communities");
  auto* pairs = app.add_subcommand("pairs", "Generate rated recipe pairs");
  auto* features = app.add_subcommand("features", "Export the combined pair feature matrix");
  auto* train = app.add_subcommand("train", "Train one condition's model");
  std::string condition = "combined";
  train->add_option("--condition", condition, "baseline | full_ingredients | nutrition | networks | combined");
  auto* evaluate = app.add_subcommand("evaluate", "Accuracy of the five feature-set conditions");
  bool variance = false;
  evaluate->add_flag("--variance", variance, "Also rerun every condition over the variance seeds");
  auto* sweep = app.add_subcommand("sweep", "Accuracy against community dimension k");
  std::vector<std::size_t> ks;
  sweep->add_option("--k", ks, "k values (default from config)")->delimiter(',');
  auto* report = app.add_subcommand("report", "Feature importance of the combined model");
  auto* demo = app.add_subcommand("demo", "Full pipeline; the bundled demo config unless --config is given");
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus and its modification ledger");

  CLI11_PARSE(app, argc, argv);

  try {
    const bool demo_default = demo->parsed() || synth->parsed();
    auto cfg = resolve(g, demo_default);
    if (demo->parsed()) {
      auto r = rn::run_pipeline(cfg);
      for (const auto& c : r.conditions)
        std::cout << c.name << '\t' << rn::text::format_fixed(c.accuracy, 4) << '\n';
      std::cout << "reports written to " << r.out_dir.string() << '\n';
      return 0;
    }
    if (synth->parsed()) {
      if (!cfg.synthetic) throw rn::StageError("config", "config has no synthetic section");
      auto sc = *cfg.synthetic;
      sc.seed = cfg.seed;
      auto s = rn::run_stage("parse", [&] { return rn::generate_synthetic(sc); });
      rn::ReportWriter w(cfg.out_dir);
      w.write("recipes.jsonl", [&](std::ostream& o) { rn::write_recipes(o, s.corpus); });
      w.write("reviews.jsonl", [&](std::ostream& o) { rn::write_reviews(o, s.corpus); });
      w.write("ledger.jsonl", [&](std::ostream& o) { rn::write_events(o, s.ledger); });
      w.write("synthetic_config.json", [&](std::ostream& o) { o << rn::to_json(sc).dump(2) << '\n'; });
      w.write_manifest(rn::to_json(sc));
      std::cout << s.corpus.recipes().size() << " recipes, " << s.corpus.reviews().size() << " reviews, "
                << s.ledger.size() << " ledger events written to " << cfg.out_dir.string() << '\n';
      return 0;
    }

    rn::Pipeline p(cfg);
    rn::ReportWriter w(cfg.out_dir);
    if (parse->parsed()) rn::report::corpus_summary(w, p);
    if (mine->parsed()) rn::report::mining(w, p);
    if (networks->parsed()) rn::report::networks(w, p);
    if (pairs->parsed()) rn::report::pairs(w, p);
    if (features->parsed()) rn::report::features(w, p);
    if (train->parsed()) {
      const auto& c = rn::run_stage("config", [&]() -> const rn::Condition& { return rn::find_condition(condition); });
      auto s = p.split(cfg.seed);
      auto d = p.condition_dataset(c, s);
      auto train_set = d.subset(s.train);
      auto m = rn::run_stage("train", [&] { return rn::train(train_set, cfg.gbt); });
      w.write("model." + c.name + ".txt", [&](std::ostream& o) { rn::save_model(o, m); });
      if (m.split_count() > 0) rn::report::importance(w, rn::report::importance_of(p, m), c.name);
    }
    if (evaluate->parsed()) {
      auto rows = p.run_conditions(cfg.seed);
      rn::report::conditions(w, rows);
      if (variance) rn::report::variance(w, p.run_variance(rows));
      for (const auto& r : rows) std::cout << r.name << '\t' << rn::text::format_fixed(r.accuracy, 4) << '\n';
    }
    if (sweep->parsed()) rn::report::sweep(w, p.run_sweep(ks.empty() ? cfg.sweep_k : ks));
    if (report->parsed()) {
      std::map<std::string, rn::BoostedEnsemble> models;
      auto rows = p.run_conditions(cfg.seed, &models);
      rn::report::conditions(w, rows);
      rn::report::importance(w, rn::report::importance_of(p, models.at("combined")), "combined");
    }
    w.write_manifest(rn::to_json(p.config()));
    std::cout << "reports written to " << cfg.out_dir.string() << '\n';
    return 0;
  } catch (const rn::StageError& e) {
    std::cerr << "recipenet: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "recipenet: " << e.what() << '\n';
    return 1;
  }
}
