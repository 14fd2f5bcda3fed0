// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_COMMUNITY_HPP_
#define RECIPENET_COMMUNITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "recipenet/error.hpp"
#include "recipenet/networks.hpp"
#include "recipenet/rng.hpp"

namespace recipenet {

struct Partition {
  /// Community id per node; ids are 0..count-1 in order of first appearance.
  std::vector<std::size_t> community;
  std::size_t count = 0;
  double modularity = 0.0;
};

/// Relabels ids in order of first appearance.
inline std::size_t canonicalize(std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> remap;
  for (auto& l : labels) {
    auto [it, fresh] = remap.emplace(l, remap.size());
    l = it->second;
  }
  return remap.size();
}

/// Undirected weights w(a,b) + w(b,a) with negative directed weights treated as 0.
/// Adjacency lists are sorted by neighbor.
inline std::vector<std::vector<std::pair<std::size_t, double>>> symmetrized(const WeightedDiGraph& g) {
  std::map<WeightedDiGraph::Edge, double> sym;
  for (const auto& [e, w] : g.edges()) {
    if (w <= 0.0) continue;
    const auto key = std::minmax(e.first, e.second);
    sym[{key.first, key.second}] += w;
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(g.size());
  for (const auto& [e, w] : sym) {
    adj[e.first].emplace_back(e.second, w);
    adj[e.second].emplace_back(e.first, w);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

/// Newman modularity of a labeling on an undirected adjacency (each edge
/// listed from both ends).
inline double modularity(const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
                         std::span<const std::size_t> labels) {
  const std::size_t n = adj.size();
  if (labels.size() != n) throw InvalidArgument("modularity: label count mismatch");
  double m2 = 0.0;
  std::vector<double> k(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, w] : adj[i]) {
      k[i] += w;
      m2 += w;
    }
  if (m2 <= 0.0) return 0.0;
  double inside = 0.0;
  std::map<std::size_t, double> tot;
  for (std::size_t i = 0; i < n; ++i) {
    tot[labels[i]] += k[i];
    for (const auto& [j, w] : adj[i])
      if (labels[i] == labels[j]) inside += w;
  }
  double expected = 0.0;
  for (const auto& [c, t] : tot) expected += t * t;
  return inside / m2 - expected / (m2 * m2);
}

namespace detail {

// Undirected weighted graph with self-loop weights, used across Louvain levels.
struct LouvainGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // excludes self loops
  std::vector<double> self;                                      // loop weight counted twice
};

// One local-moving phase. Returns true if any node moved.
inline bool louvain_move(const LouvainGraph& g, std::vector<std::size_t>& comm, double m2, Rng& rng) {
  const std::size_t n = g.adj.size();
  std::vector<double> k(n, 0.0), tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = g.self[i];
    for (const auto& [j, w] : g.adj[i]) k[i] += w;
    tot[comm[i]] += k[i];
  }
  bool any = false;
  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  for (int sweep = 0; sweep < 1000; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t own = comm[i];
      touched.clear();
      for (const auto& [j, w] : g.adj[i]) {
        const std::size_t c = comm[j];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += w;
      }
      tot[own] -= k[i];
      // Gain of joining c (up to a constant): link(i,c) - tot(c) k_i / m2.
      const double stay = link[own] - tot[own] * k[i] / m2;
      double best = stay;
      std::vector<std::size_t> ties{own};
      std::sort(touched.begin(), touched.end());
      for (std::size_t c : touched) {
        if (c == own) continue;
        const double gain = link[c] - tot[c] * k[i] / m2;
        const double eps = 1e-12 * std::max(1.0, std::abs(gain));
        if (gain > best + eps) {
          best = gain;
          ties.assign(1, c);
        } else if (std::abs(gain - best) <= eps && ties.front() != own) {
          ties.push_back(c);
        }
      }
      std::size_t target = ties.size() == 1 ? ties.front() : ties[rng.below(ties.size())];
      tot[target] += k[i];
      if (target != own) {
        comm[i] = target;
        moved = true;
        any = true;
      }
      for (std::size_t c : touched) link[c] = 0.0;
      link[own] = 0.0;
    }
    if (!moved) break;
  }
  return any;
}

}  // namespace detail

/// Multi-level greedy modularity maximization on the symmetrized graph.
/// Nodes are visited in index order; equal-gain moves are broken by `seed`.
inline Partition detect_communities(const WeightedDiGraph& graph, std::uint64_t seed = 0) {
  const std::size_t n = graph.size();
  if (n == 0) throw InvalidArgument("detect_communities: graph has no nodes");
  const auto base_adj = symmetrized(graph);
  Partition p;
  p.community.resize(n);
  std::iota(p.community.begin(), p.community.end(), std::size_t{0});
  double m2 = 0.0;
  for (const auto& a : base_adj)
    for (const auto& [j, w] : a) m2 += w;
  if (m2 <= 0.0) {
    p.count = n;
    p.modularity = 0.0;
    return p;
  }
  Rng rng = Rng::substream(seed, "louvain");
  detail::LouvainGraph g{base_adj, std::vector<double>(n, 0.0)};
  std::vector<std::size_t> node_to_super(n);
  std::iota(node_to_super.begin(), node_to_super.end(), std::size_t{0});
  for (int level = 0; level < 64; ++level) {
    const std::size_t gn = g.adj.size();
    std::vector<std::size_t> comm(gn);
    std::iota(comm.begin(), comm.end(), std::size_t{0});
    if (!detail::louvain_move(g, comm, m2, rng)) break;
    const std::size_t nc = canonicalize(comm);
    for (auto& s : node_to_super) s = comm[s];
    if (nc == gn) break;
    detail::LouvainGraph next;
    next.adj.resize(nc);
    next.self.assign(nc, 0.0);
    std::vector<std::map<std::size_t, double>> links(nc);
    for (std::size_t i = 0; i < gn; ++i) {
      next.self[comm[i]] += g.self[i];
      for (const auto& [j, w] : g.adj[i]) {
        if (comm[i] == comm[j])
          next.self[comm[i]] += w;
        else
          links[comm[i]][comm[j]] += w;
      }
    }
    for (std::size_t c = 0; c < nc; ++c)
      for (const auto& [d, w] : links[c]) next.adj[c].emplace_back(d, w);
    g = std::move(next);
  }
  p.community = node_to_super;
  p.count = canonicalize(p.community);
  p.modularity = modularity(base_adj, p.community);
  return p;
}

/// Adjusted Rand index between two labelings of the same items.
inline double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  if (a.size() != b.size()) throw InvalidArgument("adjusted_rand_index: length mismatch");
  const std::size_t n = a.size();
  if (n < 2) throw InvalidArgument("adjusted_rand_index: need >= 2 items");
  std::map<std::pair<std::size_t, std::size_t>, double> table;
  std::map<std::size_t, double> ra, rb;
  for (std::size_t i = 0; i < n; ++i) {
    table[{a[i], b[i]}] += 1.0;
    ra[a[i]] += 1.0;
    rb[b[i]] += 1.0;
  }
  auto c2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double sum_ij = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [k, v] : table) sum_ij += c2(v);
  for (const auto& [k, v] : ra) sum_a += c2(v);
  for (const auto& [k, v] : rb) sum_b += c2(v);
  const double expected = sum_a * sum_b / c2(static_cast<double>(n));
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (sum_ij - expected) / (max_index - expected);
}

}  // namespace recipenet

#endif  // RECIPENET_COMMUNITY_HPP_
