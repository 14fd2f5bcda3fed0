// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "recipenet/recipenet.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/svd_oracle.hpp"

namespace rn = recipenet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = o.ok && in_time;
  failures += !pass;
  std::printf("%s %2d %-28s %7.2fs (limit %gs)%s  %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), secs, limit_s,
              in_time ? "" : " TIMEOUT", o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v, int digits = 4) { return rn::text::format_fixed(v, digits); }

const rn::NormalizationRules& norm() {
  static const auto n = rn::NormalizationRules::from(fixtures::rules());
  return n;
}

int sign(double v) { return v >= 0 ? 1 : -1; }

Outcome parser_golden() {
  std::ifstream in(fixtures::data_dir() / "golden_parser.tsv");
  std::size_t total = 0, hit = 0;
  bool worked_example = false;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const std::string raw = line.substr(0, tab), want = line.substr(tab + 1);
    ++total;
    const auto got = rn::try_normalize_ingredient_line(raw, norm());
    hit += got && *got == want;
    if (rn::text::starts_with(raw, "1 (28 ounce) can baked beans")) worked_example = got && *got == "baked beans";
  }
  const double rate = total ? double(hit) / double(total) : 0.0;
  return {total == 50 && rate >= 0.95 && worked_example,
          std::to_string(hit) + "/" + std::to_string(total) + " exact, worked example " + (worked_example ? "ok" : "missed")};
}

Outcome pmi_oracle() {
  rn::Rng rng(17);
  double worst = 0;
  std::size_t checked = 0;
  bool ok = true;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 20, m = 10;
    rn::RecipeSets sets(n);
    for (auto& s : sets)
      for (std::size_t i = 0; i < m; ++i)
        if (rng.uniform() < 0.35) s.push_back(i);
    auto counts = rn::CooccurrenceCounts::from(sets, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        if (a == b) continue;
        double na = 0, nb = 0, nab = 0;
        for (const auto& s : sets) {
          const bool ha = std::find(s.begin(), s.end(), a) != s.end();
          const bool hb = std::find(s.begin(), s.end(), b) != s.end();
          na += ha;
          nb += hb;
          nab += ha && hb;
        }
        const auto got = rn::pmi(a, b, counts);
        if (nab == 0) {
          ok = ok && !got.has_value();
          continue;
        }
        const double want = std::log((nab / n) / ((na / n) * (nb / n)));
        if (!got) {
          ok = false;
          continue;
        }
        worst = std::max(worst, std::abs(*got - want) / std::max(1.0, std::abs(want)));
        ++checked;
      }
  }
  return {ok && checked > 100 && worst <= 1e-12, std::to_string(checked) + " pairs, worst rel err " + rn::text::format_double(worst)};
}

Outcome substitute_contract() {
  // Constructed log: 68 of 100 white sugar substitutions go to splenda; a rare
  // pair with 4 events must be dropped.
  rn::Vocabulary v({{"white sugar", 9}, {"splenda", 5}, {"honey", 4}, {"butter", 3}, {"margarine", 2}});
  std::vector<rn::ModificationEvent> ev;
  auto sub = [&](const char* a, const char* b, int n) {
    for (int i = 0; i < n; ++i) ev.push_back({static_cast<std::size_t>(ev.size()), "r", rn::ModKind::Substitute, a, std::string(b), ""});
  };
  sub("white sugar", "splenda", 68);
  sub("white sugar", "honey", 32);
  sub("butter", "margarine", 4);
  auto g = rn::build_substitute(ev, v);
  const bool exact = g.weight(0, 1) == 0.68 && g.weight(0, 2) == 0.32;
  const bool dropped = !g.has_edge(3, 4);

  // Out-weights over a mined synthetic log.
  auto cfg = rn::SyntheticConfig::demo();
  cfg.n_recipes = 800;
  cfg.n_users = 600;
  cfg.n_reviews = 8000;
  auto s = rn::generate_synthetic(cfg);
  auto vocab = rn::build_vocabulary(s.corpus, 1000, norm());
  rn::ReviewMiner miner(vocab, rn::MinerLexicon::from(fixtures::rules()));
  auto mined = rn::build_substitute(rn::mine_corpus(s.corpus, miner, norm()), vocab);
  std::vector<double> out(vocab.size(), 0.0);
  for (const auto& [e, w] : mined.edges()) out[e.first] += w;
  double worst = 0;
  std::size_t sources = 0;
  for (double o : out)
    if (o > 0) {
      worst = std::max(worst, std::abs(o - 1.0));
      ++sources;
    }
  return {exact && dropped && sources > 5 && worst <= 1e-12,
          "sugar->splenda " + rn::text::format_double(g.weight(0, 1).value_or(0)) + ", rare edge " +
              (dropped ? "dropped" : "kept") + ", " + std::to_string(sources) + " sources, worst |sum-1| " +
              rn::text::format_double(worst)};
}

Outcome preference_example() {
  const std::vector<std::string> names{"beef", "ketchup", "cheese", "pickles"};
  rn::RecipeSets sets{{0, 1, 2}, {0, 3}};
  auto counts = rn::CooccurrenceCounts::from(sets, 4);
  std::vector<rn::RatedPair> pairs{{0, 1}};
  auto g = rn::build_preference(sets, counts, pairs, names);
  std::string edges;
  for (const auto& [e, w] : g.edges()) edges += names[e.first] + "->" + names[e.second] + " ";
  return {g.edge_count() == 2 && g.has_edge(3, 1) && g.has_edge(3, 2), edges};
}

Outcome community_recovery() {
  auto cfg = rn::SyntheticConfig::demo();
  cfg.n_recipes = 800;
  cfg.n_users = 600;
  cfg.n_reviews = 8000;
  cfg.seed = 5;
  cfg.n_ingredients = 60;
  cfg.n_communities = 2;
  cfg.community_cohesion = 0.9;
  cfg.planted_substitutions.clear();
  auto s = rn::generate_synthetic(cfg);
  auto vocab = rn::build_vocabulary(s.corpus, 1000, norm());
  auto sets = rn::recipe_sets(s.corpus, vocab, norm());
  auto g = rn::build_complement(sets, vocab);
  std::vector<std::size_t> planted(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    auto it = std::find(s.ingredient_names.begin(), s.ingredient_names.end(), vocab.names()[i]);
    planted[i] = s.community[static_cast<std::size_t>(it - s.ingredient_names.begin())];
  }
  auto p = rn::detect_communities(g, 3);
  const double ari = rn::adjusted_rand_index(p.community, planted);
  return {ari >= 0.9, "ARI " + fmt(ari) + ", " + std::to_string(p.count) + " communities, modularity " + fmt(p.modularity)};
}

Outcome svd_correctness() {
  rn::Rng rng(5);
  double sigma = 0, orth = 0;
  bool bound = true, ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t r = 2 + rng.below(19), c = 2 + rng.below(19);
    const std::size_t k = 1 + rng.below(std::min(r, c));
    auto w = oracles::random_matrix(rng, r, c);
    auto b = rn::svd_lowrank(rn::SparseMatrix::from_dense(r, c, w), k, {.seed = static_cast<std::uint64_t>(trial)});
    ok = ok && b.k == k && b.converged;
    auto chk = oracles::check_svd(r, c, w, b);
    sigma = std::max(sigma, chk.max_sigma_rel_err);
    orth = std::max(orth, chk.max_orth_err);
    bound = bound && chk.reconstruction_sq <= chk.tail_sq + 1e-6;
  }
  return {ok && sigma <= 1e-6 && orth <= 1e-8 && bound,
          "sigma rel err " + rn::text::format_double(sigma) + ", orth err " + rn::text::format_double(orth) +
              ", reconstruction bound " + (bound ? "holds" : "violated")};
}

Outcome pair_oracle() {
  rn::Rng rng(77);
  std::size_t agree = 0, pairs = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto pc = oracles::random_pair_corpus(rng);
    auto got = rn::generate_pairs(pc.corpus, pc.sets, rn::idf_table(pc.sets, pc.n_ingredients));
    auto want = oracles::brute_force_pairs(pc.corpus, pc.sets, pc.n_ingredients);
    agree += oracles::same_pairs(got, want);
    pairs += want.size();
  }
  return {agree == 50 && pairs > 0, std::to_string(agree) + "/50 corpora identical, " + std::to_string(pairs) + " pairs"};
}

Outcome learner_sanity() {
  rn::Rng rng(3);
  std::size_t stumps = 0, stump_ok = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t rows = 20 + rng.below(60), cols = 1 + rng.below(5);
    auto d = oracles::make_dataset(rng, rows, cols, [&](auto r) { return sign(r[0] + r[cols - 1] - 1.0 + 0.3 * rng.normal()); });
    auto m = rn::train(d, {.n_trees = 1, .max_leaves = 2, .subsample_fraction = 1.0, .min_samples_leaf = 3});
    if (m.trees.empty()) continue;
    std::size_t pos = 0;
    for (int y : d.y) pos += y > 0;
    const double f0 = 0.5 * std::log(double(pos) / double(rows - pos));
    std::vector<double> target(rows);
    for (std::size_t r = 0; r < rows; ++r) target[r] = d.y[r] * std::exp(-d.y[r] * f0);
    auto want = oracles::exhaustive_stump(d, target, 3);
    const auto& root = m.trees[0].nodes[0];
    ++stumps;
    stump_ok += want.found && static_cast<std::size_t>(root.feature) == want.feature && root.threshold == want.threshold;
  }

  auto sep = oracles::make_dataset(rng, 200, 1, [](auto r) { return sign(r[0] - 0.5); });
  const double sep_acc = rn::evaluate(rn::train(sep, {.n_trees = 1, .subsample_fraction = 1.0}), sep);

  auto x = oracles::xor_dataset(rng, 50);
  const double xor_acc = rn::evaluate(rn::train(x, {.n_trees = 100, .seed = 9}), x);

  auto noisy = oracles::make_dataset(rng, 300, 4, [&](auto r) { return sign(r[0] * r[1] - 0.25 + 0.2 * rng.normal()); });
  std::vector<double> trace;
  rn::train(noisy, {.n_trees = 60, .subsample_fraction = 1.0}, &trace);
  bool monotone = trace.size() == 61;
  for (std::size_t i = 1; i < trace.size(); ++i) monotone = monotone && trace[i] <= trace[i - 1] * (1 + 1e-12);

  return {stumps > 0 && stump_ok == stumps && sep_acc == 1.0 && xor_acc >= 0.95 && monotone,
          "stumps " + std::to_string(stump_ok) + "/" + std::to_string(stumps) + ", separable " + fmt(sep_acc) +
              ", xor " + fmt(xor_acc) + ", loss " + (monotone ? "monotone" : "not monotone")};
}

Outcome importance_concentration() {
  rn::Rng rng(11);
  auto d = oracles::make_dataset(rng, 600, 6, [](auto r) { return sign(r[2] - 0.4); });
  auto imp = rn::relative_importance(rn::train(d, {.n_trees = 50, .seed = 1}));
  const double total = std::accumulate(imp.begin(), imp.end(), 0.0);
  return {imp[2] >= 0.8 && std::abs(total - 1.0) <= 1e-12, "informative share " + fmt(imp[2])};
}

std::map<std::string, std::string> bundle(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[e.path().filename().string()] = s.str();
  }
  return out;
}

struct DemoRuns {
  fixtures::TempDir dir{"acceptance"};
  rn::PipelineConfig config;
  std::optional<rn::PipelineResult> first;
  double first_seconds = 0;
};

Outcome demo_ordering(DemoRuns& runs) {
  runs.config = rn::load_pipeline_config(fixtures::data_dir() / "demo_config.json");
  runs.config.out_dir = runs.dir.path() / "run1";
  const auto t0 = std::chrono::steady_clock::now();
  runs.first = rn::run_pipeline(runs.config);
  runs.first_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::map<std::string, double> acc;
  for (const auto& c : runs.first->conditions) acc[c.name] = c.accuracy;
  const double base = acc.at("baseline"), net = acc.at("networks"), comb = acc.at("combined");
  return {comb >= net && net > base && net - base >= 0.05,
          "baseline " + fmt(base) + ", networks " + fmt(net) + ", combined " + fmt(comb)};
}

Outcome determinism(DemoRuns& runs) {
  if (!runs.first) return {false, "first run missing"};
  auto cfg = runs.config;
  cfg.out_dir = runs.dir.path() / "run2";
  rn::run_pipeline(cfg);
  auto a = bundle(runs.dir.path() / "run1"), b = bundle(runs.dir.path() / "run2");
  std::size_t same = 0;
  for (const auto& [name, bytes] : a) {
    auto it = b.find(name);
    same += it != b.end() && it->second == bytes;
  }
  return {same == a.size() && a.size() == b.size() && !a.empty(),
          std::to_string(same) + "/" + std::to_string(a.size()) + " files identical"};
}

Outcome extractor_fidelity() {
  auto s = rn::generate_synthetic(rn::SyntheticConfig::demo());
  auto vocab = rn::build_vocabulary(s.corpus, 1000, norm());
  rn::ReviewMiner miner(vocab, rn::MinerLexicon::from(fixtures::rules()));
  auto agree = rn::compare_to_ledger(s.ledger, rn::mine_corpus(s.corpus, miner, norm()));
  return {agree.ledger > 0 && agree.precision() >= 0.95 && agree.recall() >= 0.95,
          std::to_string(agree.ledger) + " ledger events, precision " + fmt(agree.precision()) + ", recall " +
              fmt(agree.recall())};
}

}  // namespace

int main() {
  rn::log::ScopedCapture quiet;  // warnings are expected (clamped k and the like)
  criterion(1, "parser golden file", 1, parser_golden);
  criterion(2, "pmi oracle", 5, pmi_oracle);
  criterion(3, "substitute network", 1, substitute_contract);
  criterion(4, "preference example", 1, preference_example);
  criterion(5, "community recovery", 10, community_recovery);
  criterion(6, "svd vs dense eigensolver", 10, svd_correctness);
  criterion(7, "pair generation oracle", 10, pair_oracle);
  criterion(8, "learner sanity", 30, learner_sanity);
  criterion(9, "importance concentration", 10, importance_concentration);
  DemoRuns runs;
  criterion(10, "demo condition ordering", 120, [&] { return demo_ordering(runs); });
  // The second run reuses the first; the limit covers both.
  criterion(11, "deterministic bundle", 240 - runs.first_seconds, [&] { return determinism(runs); });
  criterion(12, "extractor fidelity", 10, extractor_fidelity);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
