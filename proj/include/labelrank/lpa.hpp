#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "labelrank/graph.hpp"
#include "labelrank/metrics.hpp"
#include "labelrank/partition.hpp"

namespace labelrank {

struct LpaResult {
  Partition partition;
  /// Final raw label per node.
  std::vector<node_id> labels;
  std::size_t iterations = 0;
  /// False when the run stopped at the iteration cap, typically because
  /// synchronous updates oscillate.
  bool converged = false;
};

/// Synchronous label propagation. Every node starts with its own id as
/// label; each round all nodes adopt the label most frequent among their
/// neighbors, drawing uniformly among tied labels. A node's own label
/// counts only if the node is its own neighbor through a selfloop, which
/// is ignored here; nodes without other neighbors keep their label.
inline LpaResult run_lpa(const Graph& g, std::uint64_t seed,
                         std::size_t max_iterations = 100) {
  if (max_iterations == 0) throw error("max iterations must be positive");
  const std::size_t n = g.node_count();
  std::mt19937_64 rng(seed);

  std::vector<node_id> labels(n), next(n);
  for (node_id i = 0; i < n; ++i) labels[i] = i;

  std::vector<std::size_t> votes(n, 0);
  std::vector<node_id> seen, tied;
  LpaResult result;
  for (std::size_t t = 1; t <= max_iterations; ++t) {
    for (node_id i = 0; i < n; ++i) {
      std::size_t best = 0;
      for (node_id j : g.neighbors(i)) {
        if (j == i) continue;
        const node_id l = labels[j];
        if (votes[l]++ == 0) seen.push_back(l);
        best = std::max(best, votes[l]);
      }
      if (seen.empty()) {
        next[i] = labels[i];
        continue;
      }
      for (node_id l : seen) {
        if (votes[l] == best) tied.push_back(l);
        votes[l] = 0;
      }
      seen.clear();
      if (tied.size() == 1) {
        next[i] = tied.front();
      } else {
        std::sort(tied.begin(), tied.end());
        std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
        next[i] = tied[pick(rng)];
      }
      tied.clear();
    }
    result.iterations = t;
    const bool changed = next != labels;
    labels.swap(next);
    if (!changed) {
      result.converged = true;
      break;
    }
  }
  result.partition = Partition::from_labels(labels);
  result.labels = std::move(labels);
  return result;
}

struct LpaSeedOutcome {
  std::uint64_t seed = 0;
  double modularity = 0.0;
  std::size_t communities = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct LpaStabilityReport {
  std::vector<LpaSeedOutcome> runs;
  /// Distinct partitions across seeds, compared after canonical relabeling.
  std::size_t distinct_partitions = 0;
  double min_modularity = 0.0;
  double max_modularity = 0.0;
  double mean_modularity = 0.0;
  /// First seed attaining `max_modularity`, and its partition.
  std::uint64_t best_seed = 0;
  Partition best_partition;
};

/// Runs LPA once per seed and summarizes how much the outcome varies.
inline LpaStabilityReport lpa_stability_report(const Graph& g,
                                               std::span<const std::uint64_t> seeds,
                                               std::size_t max_iterations = 100) {
  if (seeds.size() < 2) throw error("stability report needs at least two seeds");
  LpaStabilityReport report;
  std::vector<Partition> distinct;
  double total = 0.0;
  report.min_modularity = std::numeric_limits<double>::infinity();
  report.max_modularity = -std::numeric_limits<double>::infinity();
  for (std::uint64_t seed : seeds) {
    LpaResult r = run_lpa(g, seed, max_iterations);
    LpaSeedOutcome o;
    o.seed = seed;
    o.modularity = modularity(g, r.partition);
    o.communities = r.partition.community_count();
    o.iterations = r.iterations;
    o.converged = r.converged;
    report.runs.push_back(o);

    total += o.modularity;
    report.min_modularity = std::min(report.min_modularity, o.modularity);
    if (o.modularity > report.max_modularity) {
      report.max_modularity = o.modularity;
      report.best_seed = seed;
      report.best_partition = r.partition;
    }
    if (std::find(distinct.begin(), distinct.end(), r.partition) == distinct.end()) {
      distinct.push_back(std::move(r.partition));
    }
  }
  report.distinct_partitions = distinct.size();
  report.mean_modularity = total / static_cast<double>(seeds.size());
  return report;
}

}  // namespace labelrank
