#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "labelrank/lpa.hpp"
#include "test_support.hpp"

namespace labelrank {
namespace {

TEST(RunLpa, SameSeedSamePartition) {
  Graph g = testing::karate();
  for (std::uint64_t seed : {1u, 42u, 977u}) {
    auto a = run_lpa(g, seed);
    auto b = run_lpa(g, seed);
    EXPECT_EQ(a.partition, b.partition);
    EXPECT_EQ(a.iterations, b.iterations);
  }
}

TEST(RunLpa, TwoTrianglesAlwaysSplit) {
  Graph g = testing::two_triangles();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto r = run_lpa(g, seed);
    EXPECT_EQ(r.partition.community_count(), 2u) << seed;
    EXPECT_EQ(r.partition.community_of(2), 0u);
    EXPECT_EQ(r.partition.community_of(5), 3u);
  }
}

TEST(RunLpa, SingleNodeIsItsOwnCommunity) {
  auto r = run_lpa(Graph::from_edges(1, {}), 5);
  EXPECT_EQ(r.partition.community_count(), 1u);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.labels[0], 0u);
}

TEST(RunLpa, CompleteGraphConsensusOrTwoCycle) {
  // Synchronous updates on K4: from labels (a,a,b,b) every node sees a
  // strict majority of the other label, so the state flips forever.
  Graph g = testing::complete(4);
  std::size_t consensus = 0, oscillating = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto r = run_lpa(g, seed);
    if (r.converged) {
      EXPECT_EQ(r.partition.community_count(), 1u);
      ++consensus;
    } else {
      EXPECT_EQ(r.partition.community_count(), 2u);
      for (const auto& [id, members] : r.partition.communities()) EXPECT_EQ(members.size(), 2u);
      ++oscillating;
    }
  }
  EXPECT_GT(consensus, 0u);
  EXPECT_GT(oscillating, 0u);
}

TEST(RunLpa, FinalLabelHeldByANeighbor) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = testing::random_sparse(40, 0.08, rng);
    auto r = run_lpa(g, trial);
    if (!r.converged) continue;
    for (node_id i = 0; i < g.node_count(); ++i) {
      auto nb = g.neighbors(i);
      if (nb.empty()) {
        EXPECT_EQ(r.labels[i], i);
        continue;
      }
      bool held = false;
      for (node_id j : nb) held = held || r.labels[j] == r.labels[i];
      EXPECT_TRUE(held) << "node " << i;
    }
  }
}

TEST(RunLpa, RejectsZeroIterationCap) {
  EXPECT_THROW(run_lpa(testing::triangle(), 1, 0), error);
}

TEST(LpaStabilityReport, ForcedOutcomeHasOnePartition) {
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  auto report = lpa_stability_report(testing::two_triangles(), seeds);
  EXPECT_EQ(report.distinct_partitions, 1u);
  EXPECT_EQ(report.runs.size(), 5u);
  EXPECT_DOUBLE_EQ(report.min_modularity, report.max_modularity);
}

TEST(LpaStabilityReport, KarateTenSeeds) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  Graph g = testing::karate();
  auto report = lpa_stability_report(g, seeds);
  EXPECT_GE(report.distinct_partitions, 1u);
  EXPECT_LE(report.distinct_partitions, seeds.size());
  EXPECT_LE(report.min_modularity, report.mean_modularity);
  EXPECT_LE(report.mean_modularity, report.max_modularity);
  EXPECT_DOUBLE_EQ(modularity(g, report.best_partition), report.max_modularity);
}

TEST(LpaStabilityReport, NeedsTwoSeeds) {
  const std::vector<std::uint64_t> one{1};
  EXPECT_THROW(lpa_stability_report(testing::triangle(), one), error);
}

}  // namespace
}  // namespace labelrank
