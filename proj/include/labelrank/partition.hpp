#pragma once

#include <map>
#include <span>
#include <vector>

#include "labelrank/types.hpp"

namespace labelrank {

/// Node -> community assignment. Community ids are canonical: each
/// community is named by its smallest member, so two partitions that
/// group nodes the same way compare equal regardless of the raw labels
/// they were built from.
class Partition {
 public:
  Partition() = default;

  /// `labels[i]` is any label for node i; nodes with equal labels form a
  /// community.
  template <class Label>
  static Partition from_labels(std::span<const Label> labels) {
    Partition p;
    p.assignment_.resize(labels.size());
    std::map<Label, node_id> first_member;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, inserted] =
          first_member.try_emplace(labels[i], static_cast<node_id>(i));
      p.assignment_[i] = it->second;
    }
    p.community_count_ = first_member.size();
    return p;
  }

  template <class Label>
  static Partition from_labels(const std::vector<Label>& labels) {
    return from_labels(std::span<const Label>(labels));
  }

  std::size_t size() const noexcept { return assignment_.size(); }

  std::size_t community_count() const noexcept { return community_count_; }

  node_id community_of(node_id i) const { return assignment_.at(i); }

  std::span<const node_id> assignment() const noexcept { return assignment_; }

  /// Communities keyed by canonical id, members ascending.
  std::map<node_id, std::vector<node_id>> communities() const {
    std::map<node_id, std::vector<node_id>> out;
    for (node_id i = 0; i < assignment_.size(); ++i) {
      out[assignment_[i]].push_back(i);
    }
    return out;
  }

  /// Dense 0-based index per node, communities numbered by smallest member.
  std::vector<std::size_t> dense_ids() const {
    std::vector<std::size_t> index(assignment_.size(), 0);
    std::vector<std::size_t> out(assignment_.size());
    std::size_t next = 0;
    for (node_id i = 0; i < assignment_.size(); ++i) {
      if (assignment_[i] == i) index[i] = next++;
      out[i] = index[assignment_[i]];
    }
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<node_id> assignment_;
  std::size_t community_count_ = 0;
};

}  // namespace labelrank
