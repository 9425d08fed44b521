#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "labelrank/types.hpp"

namespace labelrank {

/// Probabilities within this distance of the maximum count as maximal.
inline constexpr double default_tie_tolerance = 1e-9;

struct LabelProb {
  node_id label;
  double prob;

  friend bool operator==(const LabelProb&, const LabelProb&) = default;
};

/// Sparse distribution over labels for one node.
///
/// Entries are kept in descending probability, equal probabilities by
/// ascending label. Labels are unique and probabilities positive; the
/// operators below keep the sum at 1.
class LabelDistribution {
 public:
  LabelDistribution() = default;

  /// Validates and orders `entries`. Throws on duplicate labels or
  /// non-positive probabilities. Does not renormalize.
  explicit LabelDistribution(std::vector<LabelProb> entries)
      : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
      if (!(e.prob > 0.0) || !std::isfinite(e.prob)) {
        throw error("label probabilities must be positive and finite");
      }
    }
    order();
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (entries_[i].label == entries_[j].label) {
          throw error("duplicate label " + std::to_string(entries_[i].label));
        }
      }
    }
  }

  static LabelDistribution singleton(node_id label) {
    LabelDistribution d;
    d.entries_.push_back({label, 1.0});
    return d;
  }

  /// Takes entries produced by an operator: positive, unique labels.
  static LabelDistribution adopt(std::vector<LabelProb> entries) {
    LabelDistribution d;
    d.entries_ = std::move(entries);
    d.order();
    return d;
  }

  std::span<const LabelProb> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  double max_probability() const noexcept {
    return entries_.empty() ? 0.0 : entries_.front().prob;
  }

  double probability(node_id label) const noexcept {
    for (const auto& e : entries_) {
      if (e.label == label) return e.prob;
    }
    return 0.0;
  }

  double sum() const noexcept {
    double s = 0.0;
    for (const auto& e : entries_) s += e.prob;
    return s;
  }

  friend bool operator==(const LabelDistribution&,
                         const LabelDistribution&) = default;

 private:
  void order() {
    std::sort(entries_.begin(), entries_.end(),
              [](const LabelProb& a, const LabelProb& b) {
                return a.prob != b.prob ? a.prob > b.prob : a.label < b.label;
              });
  }

  std::vector<LabelProb> entries_;
};

/// Labels whose probability is within `tolerance` of the maximum, ascending.
class MaxLabelSet {
 public:
  MaxLabelSet() = default;
  explicit MaxLabelSet(std::vector<node_id> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
  }

  std::span<const node_id> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  node_id smallest() const { return labels_.front(); }

  bool contains(node_id label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
  }

  /// True when every label of this set is also in `other`.
  bool is_subset_of(const MaxLabelSet& other) const {
    if (labels_.size() > other.labels_.size()) return false;
    return std::includes(other.labels_.begin(), other.labels_.end(),
                         labels_.begin(), labels_.end());
  }

  friend bool operator==(const MaxLabelSet&, const MaxLabelSet&) = default;

 private:
  std::vector<node_id> labels_;
};

inline MaxLabelSet max_labels(const LabelDistribution& d,
                              double tolerance = default_tie_tolerance) {
  std::vector<node_id> labels;
  const double floor = d.max_probability() - tolerance;
  for (const auto& e : d.entries()) {
    if (e.prob < floor) break;
    labels.push_back(e.label);
  }
  return MaxLabelSet(std::move(labels));
}

namespace detail {

inline void normalize(std::vector<LabelProb>& entries) {
  double s = 0.0;
  for (const auto& e : entries) s += e.prob;
  for (auto& e : entries) e.prob /= s;
}

}  // namespace detail

/// Raises every probability to `power` and renormalizes. The support and
/// the ranking of labels are unchanged. Entries that underflow to zero are
/// dropped; the maximal label always survives.
inline LabelDistribution inflate(const LabelDistribution& d, double power) {
  if (power == 1.0 || d.empty()) return d;
  std::vector<LabelProb> out(d.entries().begin(), d.entries().end());
  // Scale by the maximum first; the ratio is what matters and it keeps the
  // powers away from underflow.
  const double top = d.max_probability();
  for (auto& e : out) e.prob = std::pow(e.prob / top, power);
  std::erase_if(out, [](const LabelProb& e) { return e.prob == 0.0; });
  detail::normalize(out);
  return LabelDistribution::adopt(std::move(out));
}

/// Drops labels with probability below `threshold` and renormalizes. When
/// every label is below the threshold the maximal labels are kept instead.
inline LabelDistribution cutoff(const LabelDistribution& d, double threshold,
                                double tolerance = default_tie_tolerance) {
  std::vector<LabelProb> kept;
  kept.reserve(d.size());
  for (const auto& e : d.entries()) {
    if (e.prob >= threshold) kept.push_back(e);
  }
  if (kept.size() == d.size()) return d;
  if (kept.empty()) {
    const double floor = d.max_probability() - tolerance;
    for (const auto& e : d.entries()) {
      if (e.prob < floor) break;
      kept.push_back(e);
    }
  }
  detail::normalize(kept);
  return LabelDistribution::adopt(std::move(kept));
}

}  // namespace labelrank
