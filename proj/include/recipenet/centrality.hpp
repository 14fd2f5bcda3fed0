// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_CENTRALITY_HPP_
#define RECIPENET_CENTRALITY_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <string_view>
#include <thread>
#include <vector>

#include "recipenet/error.hpp"
#include "recipenet/log.hpp"
#include "recipenet/networks.hpp"

namespace recipenet {

enum class Centrality { DegreeIn, DegreeOut, DegreeTotal, Strength, Betweenness, PageRank };

inline constexpr std::array<Centrality, 6> kCentralities = {
    Centrality::DegreeIn, Centrality::DegreeOut, Centrality::DegreeTotal,
    Centrality::Strength, Centrality::Betweenness, Centrality::PageRank};

inline std::string_view to_string(Centrality c) {
  switch (c) {
    case Centrality::DegreeIn: return "degree_in";
    case Centrality::DegreeOut: return "degree_out";
    case Centrality::DegreeTotal: return "degree_total";
    case Centrality::Strength: return "strength";
    case Centrality::Betweenness: return "betweenness";
    case Centrality::PageRank: return "pagerank";
  }
  return "?";
}

struct CentralityOptions {
  /// Betweenness path length: 1/weight when true, 1 per edge otherwise.
  bool weighted_distance = true;
  double damping = 0.85;
  double pagerank_tolerance = 1e-10;
  int pagerank_max_iterations = 10000;
  /// Worker threads for betweenness; never changes the result.
  unsigned threads = 1;
};

namespace detail {

// Single-source Brandes accumulation into `acc`.
inline void brandes_source(std::size_t s,
                           const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
                           bool weighted, std::vector<double>& acc) {
  const std::size_t n = adj.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf), sigma(n, 0.0), delta(n, 0.0);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<std::size_t> order;
  order.reserve(n);
  dist[s] = 0.0;
  sigma[s] = 1.0;
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.emplace(0.0, s);
  std::vector<char> done(n, 0);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (done[v]) continue;
    done[v] = 1;
    order.push_back(v);
    for (const auto& [w, wt] : adj[v]) {
      if (weighted && !(wt > 0.0)) continue;
      const double len = weighted ? 1.0 / wt : 1.0;
      const double nd = d + len;
      const double tol = 1e-12 * std::max(1.0, nd);
      if (nd < dist[w] - tol) {
        dist[w] = nd;
        sigma[w] = sigma[v];
        preds[w].assign(1, v);
        pq.emplace(nd, w);
      } else if (std::abs(nd - dist[w]) <= tol && !done[w]) {
        sigma[w] += sigma[v];
        preds[w].push_back(v);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t w = *it;
    for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    if (w != s) acc[w] += delta[w];
  }
}

}  // namespace detail

/// Betweenness normalized by (n-1)(n-2), the number of ordered pairs of other
/// nodes. Edges with non-positive weight are not traversable under weighted
/// distance.
inline std::vector<double> betweenness(const WeightedDiGraph& g, const CentralityOptions& opt = {}) {
  const std::size_t n = g.size();
  std::vector<double> out(n, 0.0);
  if (n < 3) return out;
  const auto adj = g.out_adjacency();
  constexpr std::size_t kBlock = 64;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> partial(n_blocks, std::vector<double>(n, 0.0));
  auto run_block = [&](std::size_t b) {
    for (std::size_t s = b * kBlock; s < std::min(n, (b + 1) * kBlock); ++s)
      detail::brandes_source(s, adj, opt.weighted_distance, partial[b]);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(n_blocks)));
  if (workers == 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < n_blocks; b += workers) run_block(b);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& p : partial)
    for (std::size_t i = 0; i < n; ++i) out[i] += p[i];
  const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  for (double& v : out) v /= norm;
  return out;
}

/// PageRank with uniform teleport; transitions proportional to positive
/// out-weights; nodes without positive out-weight spread their mass uniformly.
inline std::vector<double> pagerank(const WeightedDiGraph& g, const CentralityOptions& opt = {}) {
  const std::size_t n = g.size();
  if (n == 0) return {};
  const auto adj = g.out_adjacency();
  std::vector<double> out_w(n, 0.0);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& [w, wt] : adj[v]) out_w[v] += std::max(wt, 0.0);
  std::vector<double> r(n, 1.0 / n), next(n);
  const double d = opt.damping;
  for (int it = 0;; ++it) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      if (out_w[v] <= 0.0) dangling += r[v];
    const double base = (1.0 - d) / n + d * dangling / n;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t v = 0; v < n; ++v) {
      if (out_w[v] <= 0.0) continue;
      for (const auto& [w, wt] : adj[v])
        if (wt > 0.0) next[w] += d * r[v] * wt / out_w[v];
    }
    double change = 0.0, total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      change += std::abs(next[v] - r[v]);
      total += next[v];
    }
    for (std::size_t v = 0; v < n; ++v) r[v] = next[v] / total;
    if (change < opt.pagerank_tolerance) break;
    if (it + 1 >= opt.pagerank_max_iterations) {
      log::warn("pagerank: no convergence after " + std::to_string(it + 1) + " iterations");
      break;
    }
  }
  return r;
}

inline std::vector<double> centrality(const WeightedDiGraph& g, Centrality kind,
                                      const CentralityOptions& opt = {}) {
  const std::size_t n = g.size();
  if (n == 0) throw InvalidArgument("centrality: graph has no nodes");
  std::vector<double> out(n, 0.0);
  switch (kind) {
    case Centrality::DegreeIn:
      for (const auto& [e, w] : g.edges()) out[e.second] += 1.0;
      return out;
    case Centrality::DegreeOut:
      for (const auto& [e, w] : g.edges()) out[e.first] += 1.0;
      return out;
    case Centrality::DegreeTotal:
      for (const auto& [e, w] : g.edges()) {
        out[e.first] += 1.0;
        out[e.second] += 1.0;
      }
      return out;
    case Centrality::Strength:
      for (const auto& [e, w] : g.edges()) {
        out[e.first] += w;
        out[e.second] += w;
      }
      return out;
    case Centrality::Betweenness: return betweenness(g, opt);
    case Centrality::PageRank: return pagerank(g, opt);
  }
  return out;
}

}  // namespace recipenet

#endif  // RECIPENET_CENTRALITY_HPP_
