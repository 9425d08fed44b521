#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "labelrank/graph.hpp"
#include "labelrank/label_distribution.hpp"
#include "labelrank/metrics.hpp"
#include "labelrank/parallel.hpp"
#include "labelrank/partition.hpp"
#include "labelrank/stop_tracker.hpp"

namespace labelrank {

using Distributions = std::vector<LabelDistribution>;

/// Tuning parameters of a LabelRank run.
struct Params {
  /// Exponent of the inflation operator, >= 1.
  double inflation = 2.0;
  /// Labels below this probability are cut, in [0, 1].
  double cutoff = 0.1;
  /// A node accepts its new distribution only while at most this fraction
  /// of its neighborhood carries its maximal labels, in [0, 1].
  double update_fraction = 0.5;
  /// Stop once any change count repeats this many times.
  std::size_t stop_frequency = 5;
  std::size_t max_iterations = 1000;
  double tie_tolerance = default_tie_tolerance;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (!std::isfinite(inflation) || inflation < 1.0) {
      fail("inflation must be a finite value >= 1");
    }
    if (!(cutoff >= 0.0 && cutoff <= 1.0)) fail("cutoff must lie in [0, 1]");
    if (!(update_fraction >= 0.0 && update_fraction <= 1.0)) {
      fail("update fraction q must lie in [0, 1]");
    }
    if (stop_frequency == 0) fail("stop frequency must be positive");
    if (max_iterations == 0) fail("max iterations must be positive");
    if (!(tie_tolerance >= 0.0) || !std::isfinite(tie_tolerance)) {
      fail("tie tolerance must be a finite value >= 0");
    }
  }
};

struct IterationRecord {
  std::size_t iteration = 0;
  std::size_t num_change = 0;
  double average_labels = 0.0;
  /// Only filled when requested; costs O(m) per iteration.
  std::optional<double> modularity;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct IterationTrace {
  /// Average support size right after initialization.
  double initial_average_labels = 0.0;
  std::vector<IterationRecord> rows;

  friend bool operator==(const IterationTrace&, const IterationTrace&) = default;
};

struct RunOptions {
  unsigned threads = 1;
  bool trace_modularity = false;
};

struct LabelRankResult {
  Distributions distributions;
  Partition partition;
  IterationTrace trace;
  std::size_t iterations = 0;
  /// False when the run hit max_iterations before the stop criterion.
  bool converged = false;
};

/// Uniform distribution over each node's neighborhood, itself included.
/// Requires selfloops on every node.
inline Distributions init_distributions(const Graph& g) {
  const std::size_t n = g.node_count();
  Distributions out;
  out.reserve(n);
  for (node_id i = 0; i < n; ++i) {
    if (!g.has_selfloop(i)) {
      throw error("node " + g.name(i) +
                  " has no selfloop; call add_selfloops before initializing");
    }
    auto nb = g.neighbors(i);
    const double p = 1.0 / static_cast<double>(nb.size());
    std::vector<LabelProb> entries;
    entries.reserve(nb.size());
    for (node_id j : nb) entries.push_back({j, p});
    out.push_back(LabelDistribution::adopt(std::move(entries)));
  }
  return out;
}

/// Sparse accumulator over the label alphabet [0, n).
class LabelAccumulator {
 public:
  explicit LabelAccumulator(std::size_t alphabet) : mass_(alphabet, 0.0) {}

  void add(const LabelDistribution& d) {
    for (const auto& e : d.entries()) {
      if (mass_[e.label] == 0.0) touched_.push_back(e.label);
      mass_[e.label] += e.prob;
    }
  }

  /// Emits the accumulated mass divided by `count`, renormalized, and
  /// resets the accumulator.
  LabelDistribution take_mean(std::size_t count) {
    std::vector<LabelProb> entries;
    entries.reserve(touched_.size());
    const double scale = 1.0 / static_cast<double>(count);
    for (node_id label : touched_) {
      entries.push_back({label, mass_[label] * scale});
      mass_[label] = 0.0;
    }
    touched_.clear();
    detail::normalize(entries);
    return LabelDistribution::adopt(std::move(entries));
  }

 private:
  std::vector<double> mass_;
  std::vector<node_id> touched_;
};

/// New distribution of node `i`: the mean of its neighbors' distributions.
inline LabelDistribution propagate_node(const Graph& g, std::span<const LabelDistribution> p,
                                        node_id i, LabelAccumulator& acc) {
  auto nb = g.neighbors(i);
  if (nb.empty()) return p[i];
  for (node_id j : nb) acc.add(p[j]);
  return acc.take_mean(nb.size());
}

/// Synchronous propagation step; reads `p` only.
inline Distributions propagate(const Graph& g, std::span<const LabelDistribution> p,
                               unsigned threads = 1) {
  const std::size_t n = g.node_count();
  Distributions out(n);
  std::vector<LabelAccumulator> scratch(std::max(1u, threads), LabelAccumulator(n));
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end, unsigned w) {
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = propagate_node(g, p, static_cast<node_id>(i), scratch[w]);
    }
  });
  return out;
}

struct UpdateOutcome {
  Distributions distributions;
  std::size_t num_change = 0;
  /// Per node, 1 when the proposed distribution was accepted.
  std::vector<char> updated;
};

namespace detail {
/// Absorbs rounding in q * k when the two sides are equal in exact terms.
inline constexpr double update_slack = 1e-9;
}

/// Number of neighbors j of `i` (itself included) with C*_i ⊆ C*_j.
inline std::size_t subset_support(const Graph& g, std::span<const MaxLabelSet> max_sets,
                                  node_id i) {
  std::size_t hits = 0;
  for (node_id j : g.neighbors(i)) {
    if (max_sets[i].is_subset_of(max_sets[j])) ++hits;
  }
  return hits;
}

/// Keeps `previous[i]` for nodes whose maximal labels are already shared by
/// more than `q * k_i` of their neighborhood and takes `proposed[i]`
/// elsewhere. Maximal label sets are taken from `previous`.
inline UpdateOutcome conditional_update(const Graph& g,
                                        std::span<const LabelDistribution> previous,
                                        Distributions proposed, double q,
                                        double tolerance = default_tie_tolerance,
                                        unsigned threads = 1) {
  const std::size_t n = g.node_count();
  if (previous.size() != n || proposed.size() != n) {
    throw error("distribution count does not match node count");
  }
  std::vector<MaxLabelSet> max_sets(n);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) max_sets[i] = max_labels(previous[i], tolerance);
  });

  UpdateOutcome out;
  out.updated.assign(n, 0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto node = static_cast<node_id>(i);
      const double limit = q * static_cast<double>(g.degree(node)) + detail::update_slack;
      if (static_cast<double>(subset_support(g, max_sets, node)) <= limit) {
        out.updated[i] = 1;
      } else {
        proposed[i] = previous[i];
      }
    }
  });
  for (char u : out.updated) out.num_change += static_cast<std::size_t>(u);
  out.distributions = std::move(proposed);
  return out;
}

/// Smallest maximal label of every node.
inline std::vector<node_id> dominant_labels(std::span<const LabelDistribution> p,
                                            double tolerance = default_tie_tolerance) {
  std::vector<node_id> labels(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].empty()) throw error("empty label distribution at node " + std::to_string(i));
    labels[i] = max_labels(p[i], tolerance).smallest();
  }
  return labels;
}

/// Groups nodes that share the same dominant label. Grouping is by label
/// only; a community need not be connected.
inline Partition extract_communities(std::span<const LabelDistribution> p,
                                     double tolerance = default_tie_tolerance) {
  return Partition::from_labels(dominant_labels(p, tolerance));
}

inline double average_label_count(std::span<const LabelDistribution> p) {
  if (p.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& d : p) total += d.size();
  return static_cast<double>(total) / static_cast<double>(p.size());
}

/// Propagation, inflation and cutoff for every node, reading `p` only.
inline Distributions propose(const Graph& g, std::span<const LabelDistribution> p,
                             const Params& params, unsigned threads = 1) {
  const std::size_t n = g.node_count();
  Distributions out(n);
  std::vector<LabelAccumulator> scratch(std::max(1u, threads), LabelAccumulator(n));
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end, unsigned w) {
    for (std::size_t i = begin; i < end; ++i) {
      auto next = propagate_node(g, p, static_cast<node_id>(i), scratch[w]);
      next = inflate(next, params.inflation);
      out[i] = cutoff(next, params.cutoff, params.tie_tolerance);
    }
  });
  return out;
}

/// Runs LabelRank on `g`. Selfloops are added when missing; per-iteration
/// modularity, when requested, is measured on `g` exactly as passed in.
/// The result does not depend on `options.threads`.
inline LabelRankResult run_labelrank(const Graph& g, const Params& params,
                                     const RunOptions& options = {}) {
  params.validate();
  const Graph looped = add_selfloops(g);

  LabelRankResult result;
  Distributions p = init_distributions(looped);
  result.trace.initial_average_labels = average_label_count(p);

  StopTracker tracker;
  for (std::size_t t = 1; t <= params.max_iterations; ++t) {
    auto update = conditional_update(looped, p, propose(looped, p, params, options.threads),
                                     params.update_fraction, params.tie_tolerance,
                                     options.threads);
    p = std::move(update.distributions);

    IterationRecord row;
    row.iteration = t;
    row.num_change = update.num_change;
    row.average_labels = average_label_count(p);
    if (options.trace_modularity) {
      row.modularity = modularity(g, extract_communities(p, params.tie_tolerance));
    }
    result.trace.rows.push_back(row);
    result.iterations = t;

    if (tracker.record_and_check(update.num_change, params.stop_frequency)) {
      result.converged = true;
      break;
    }
  }
  result.partition = extract_communities(p, params.tie_tolerance);
  result.distributions = std::move(p);
  return result;
}

}  // namespace labelrank
