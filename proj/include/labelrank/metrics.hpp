#pragma once

#include <map>
#include <utility>
#include <vector>

#include "labelrank/graph.hpp"
#include "labelrank/partition.hpp"

namespace labelrank {

/// Newman modularity of `p` on `g`.
///
/// Pass the graph as loaded, before selfloop preprocessing. Selfloops that
/// are present contribute A_ii = 1 and one unit of degree, consistent with
/// the Graph degree convention. A graph without edges has Q = 0 by
/// definition; callers that care should check `edge_count()` and warn.
inline double modularity(const Graph& g, const Partition& p) {
  const std::size_t n = g.node_count();
  if (p.size() != n) {
    throw error("partition covers " + std::to_string(p.size()) +
                " nodes, graph has " + std::to_string(n));
  }
  if (g.edge_count() == 0) return 0.0;

  // Indexed by canonical community id (a node id), so plain vectors do.
  std::vector<double> internal(n, 0.0);
  std::vector<double> total(n, 0.0);
  double two_m = 0.0;
  for (node_id i = 0; i < n; ++i) {
    const node_id ci = p.community_of(i);
    auto nb = g.neighbors(i);
    total[ci] += static_cast<double>(nb.size());
    two_m += static_cast<double>(nb.size());
    for (node_id j : nb) {
      if (p.community_of(j) == ci) internal[ci] += 1.0;
    }
  }
  double q = 0.0;
  for (node_id c = 0; c < n; ++c) {
    if (total[c] == 0.0) continue;
    const double share = total[c] / two_m;
    q += internal[c] / two_m - share * share;
  }
  return q;
}

struct PartitionComparison {
  /// Same grouping up to community relabeling.
  bool identical = false;
  /// Fraction of node pairs that both partitions classify the same way
  /// (together in both, or apart in both). 1 for fewer than two nodes.
  double agreement = 1.0;
};

inline PartitionComparison compare_partitions(const Partition& a,
                                              const Partition& b) {
  if (a.size() != b.size()) {
    throw error("partitions cover different node sets (" +
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                " nodes)");
  }
  PartitionComparison out;
  out.identical = a == b;
  const double n = static_cast<double>(a.size());
  if (a.size() < 2) return out;

  auto pairs = [](double k) { return k * (k - 1.0) / 2.0; };
  std::map<std::pair<node_id, node_id>, double> joint;
  std::map<node_id, double> rows, cols;
  for (node_id i = 0; i < a.size(); ++i) {
    const node_id ca = a.community_of(i);
    const node_id cb = b.community_of(i);
    joint[{ca, cb}] += 1.0;
    rows[ca] += 1.0;
    cols[cb] += 1.0;
  }
  double together_both = 0.0, together_a = 0.0, together_b = 0.0;
  for (const auto& [key, k] : joint) together_both += pairs(k);
  for (const auto& [key, k] : rows) together_a += pairs(k);
  for (const auto& [key, k] : cols) together_b += pairs(k);
  const double all = pairs(n);
  const double apart_both = all - together_a - together_b + together_both;
  out.agreement = (together_both + apart_both) / all;
  return out;
}

}  // namespace labelrank
