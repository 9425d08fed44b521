#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "labelrank/label_distribution.hpp"
#include "labelrank/stop_tracker.hpp"

namespace labelrank {
namespace {

LabelDistribution dist(std::vector<LabelProb> entries) {
  return LabelDistribution(std::move(entries));
}

TEST(LabelDistribution, OrdersByProbabilityThenLabel) {
  auto d = dist({{5, 0.25}, {2, 0.5}, {1, 0.25}});
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.entries()[0].label, 2u);
  EXPECT_EQ(d.entries()[1].label, 1u);
  EXPECT_EQ(d.entries()[2].label, 5u);
}

TEST(LabelDistribution, RejectsInvalidEntries) {
  EXPECT_THROW(dist({{1, 0.5}, {1, 0.5}}), error);
  EXPECT_THROW(dist({{1, 1.0}, {2, 0.0}}), error);
  EXPECT_THROW(dist({{1, -0.2}}), error);
}

TEST(Inflate, MatchesPublishedTwoLabelExample) {
  auto out = inflate(dist({{0, 0.6}, {1, 0.4}}), 2.0);
  EXPECT_NEAR(out.probability(0), 0.6923, 5e-5);
  EXPECT_NEAR(out.probability(1), 0.3077, 5e-5);
}

TEST(Inflate, UnitExponentIsIdentity) {
  auto d = dist({{3, 0.7}, {4, 0.2}, {9, 0.1}});
  EXPECT_EQ(inflate(d, 1.0), d);
}

TEST(Inflate, ThreeLabels) {
  auto out = inflate(dist({{0, 0.5}, {1, 0.3}, {2, 0.2}}), 2.0);
  EXPECT_NEAR(out.probability(0), 0.25 / 0.38, 1e-12);
  EXPECT_NEAR(out.probability(1), 0.09 / 0.38, 1e-12);
  EXPECT_NEAR(out.probability(2), 0.04 / 0.38, 1e-12);
}

TEST(Inflate, DropsUnderflowButKeepsMaximum) {
  auto out = inflate(dist({{0, 1.0 - 1e-300}, {1, 1e-300}}), 4.0);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.entries()[0].label, 0u);
  EXPECT_DOUBLE_EQ(out.entries()[0].prob, 1.0);
}

TEST(Cutoff, DropsAndRenormalizes) {
  auto out = cutoff(dist({{0, 0.7}, {1, 0.25}, {2, 0.05}}), 0.1);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NEAR(out.probability(0), 0.7 / 0.95, 1e-12);
  EXPECT_NEAR(out.probability(1), 0.25 / 0.95, 1e-12);
  EXPECT_NEAR(out.probability(0), 0.7368, 5e-5);
  EXPECT_NEAR(out.probability(1), 0.2632, 5e-5);
}

TEST(Cutoff, ZeroThresholdIsIdentity) {
  auto d = dist({{0, 0.6}, {1, 0.3999}, {2, 0.0001}});
  EXPECT_EQ(cutoff(d, 0.0), d);
}

TEST(Cutoff, AllBelowThresholdKeepsMaximalLabels) {
  std::vector<LabelProb> uniform;
  for (node_id l = 0; l < 20; ++l) uniform.push_back({l, 0.05});
  auto out = cutoff(dist(uniform), 0.1);
  ASSERT_EQ(out.size(), 20u);
  for (const auto& e : out.entries()) EXPECT_NEAR(e.prob, 0.05, 1e-12);

  auto skewed = cutoff(dist({{0, 0.09}, {1, 0.09}, {2, 0.82}}), 0.9);
  ASSERT_EQ(skewed.size(), 1u);
  EXPECT_EQ(skewed.entries()[0].label, 2u);
  EXPECT_DOUBLE_EQ(skewed.entries()[0].prob, 1.0);
}

TEST(MaxLabels, Examples) {
  EXPECT_EQ(max_labels(dist({{0, 0.5}, {1, 0.5}})), MaxLabelSet({0, 1}));
  EXPECT_EQ(max_labels(dist({{3, 0.721}, {1, 0.279}})), MaxLabelSet({3}));
  EXPECT_EQ(max_labels(dist({{0, 0.5 + 1e-10}, {1, 0.5}}), 1e-9), MaxLabelSet({0, 1}));
  EXPECT_EQ(max_labels(dist({{0, 0.5 + 1e-6}, {1, 0.5}}), 1e-9), MaxLabelSet({0}));
}

TEST(MaxLabelSet, Subset) {
  MaxLabelSet a({2}), b({1, 2}), c({1, 3});
  EXPECT_TRUE(a.is_subset_of(b));
  EXPECT_TRUE(a.is_subset_of(a));
  EXPECT_FALSE(b.is_subset_of(a));
  EXPECT_FALSE(a.is_subset_of(c));
}

/// Random distribution with 1..12 labels drawn from [0, 50).
LabelDistribution random_distribution(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_real_distribution<double> weight(0.001, 1.0);
  std::vector<node_id> labels(50);
  for (node_id i = 0; i < 50; ++i) labels[i] = i;
  std::shuffle(labels.begin(), labels.end(), rng);
  const int k = count(rng);
  std::vector<LabelProb> entries;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    entries.push_back({labels[i], weight(rng)});
    total += entries.back().prob;
  }
  for (auto& e : entries) e.prob /= total;
  return LabelDistribution(entries);
}

TEST(OperatorProperties, InflatePreservesSupportAndOrder) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> power(1.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    auto d = random_distribution(rng);
    auto out = inflate(d, power(rng));
    ASSERT_EQ(out.size(), d.size());
    EXPECT_NEAR(out.sum(), 1.0, 1e-9);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      const auto& a = d.entries()[i];
      const auto& b = d.entries()[i + 1];
      if (a.prob > b.prob) {
        EXPECT_GE(out.probability(a.label), out.probability(b.label));
      }
    }
  }
}

TEST(OperatorProperties, InflateSharpensTwoLabels) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> p(0.5001, 0.9999), power(1.01, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double big = p(rng);
    auto out = inflate(dist({{0, big}, {1, 1.0 - big}}), power(rng));
    EXPECT_GT(out.probability(0), big);
  }
}

TEST(OperatorProperties, CutoffShrinksSupport) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> threshold(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    auto d = random_distribution(rng);
    auto out = cutoff(d, threshold(rng));
    ASSERT_FALSE(out.empty());
    EXPECT_LE(out.size(), d.size());
    EXPECT_NEAR(out.sum(), 1.0, 1e-9);
    for (const auto& e : out.entries()) EXPECT_GT(d.probability(e.label), 0.0);
  }
}

TEST(StopTracker, StopsOnZeroChange) {
  StopTracker t;
  EXPECT_TRUE(t.record_and_check(0, 5));
}

TEST(StopTracker, StopsWhenCountReachesFrequency) {
  StopTracker t;
  const std::vector<std::size_t> history{7, 6, 5, 5, 5, 5};
  for (auto v : history) EXPECT_FALSE(t.record_and_check(v, 5));
  EXPECT_EQ(t.count(5), 4u);
  EXPECT_TRUE(t.record_and_check(5, 5));
  EXPECT_EQ(t.count(5), 5u);
  EXPECT_EQ(t.history().size(), 7u);
}

TEST(StopTracker, ContinuesWithoutRepeats) {
  StopTracker t;
  for (std::size_t v : {9, 8, 7}) EXPECT_FALSE(t.record_and_check(v, 5));
  EXPECT_FALSE(t.record_and_check(6, 5));
}

TEST(StopTracker, OscillationCountsEveryValue) {
  StopTracker t;
  int steps = 0;
  for (int i = 0; i < 100; ++i) {
    ++steps;
    if (t.record_and_check(i % 2 == 0 ? 4 : 9, 3)) break;
  }
  EXPECT_EQ(steps, 5);
}

}  // namespace
}  // namespace labelrank
