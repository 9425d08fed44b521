#pragma once

#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "labelrank/graph.hpp"

namespace labelrank {

namespace detail {

inline std::uint64_t edge_key(node_id u, node_id v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace detail

/// Uniform random simple graph with `n` nodes and `m` distinct edges.
inline Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 || m > n * (n - 1) / 2) throw error("cannot place that many edges");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<node_id> pick(0, static_cast<node_id>(n - 1));
  std::unordered_set<std::uint64_t> used;
  std::vector<Graph::edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    node_id u = pick(rng), v = pick(rng);
    if (u == v || !used.insert(detail::edge_key(u, v)).second) continue;
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

/// Random graph with `groups` planted communities of `group_size` nodes.
/// `m` distinct edges are drawn; each one falls inside a community with
/// probability `p_inside`. Node v belongs to community v / group_size.
inline Graph planted_partition(std::size_t groups, std::size_t group_size, std::size_t m,
                               double p_inside, std::uint64_t seed) {
  const std::size_t n = groups * group_size;
  if (group_size < 2 || m > n * (n - 1) / 4) throw error("planted partition too dense");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution inside(p_inside);
  std::uniform_int_distribution<std::size_t> pick_group(0, groups - 1);
  std::uniform_int_distribution<std::size_t> pick_member(0, group_size - 1);
  std::uniform_int_distribution<node_id> pick_any(0, static_cast<node_id>(n - 1));
  std::unordered_set<std::uint64_t> used;
  std::vector<Graph::edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    node_id u, v;
    if (inside(rng)) {
      const std::size_t base = pick_group(rng) * group_size;
      u = static_cast<node_id>(base + pick_member(rng));
      v = static_cast<node_id>(base + pick_member(rng));
    } else {
      u = pick_any(rng);
      v = pick_any(rng);
    }
    if (u == v || !used.insert(detail::edge_key(u, v)).second) continue;
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

}  // namespace labelrank
