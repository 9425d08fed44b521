#pragma once

#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

namespace labelrank {

/// Counts how often each per-iteration change count has been seen. The run
/// stops on the first iteration with no change, or once any change count
/// has been seen `stop_frequency` times.
class StopTracker {
 public:
  /// Records `num_change` and reports whether the run should stop.
  bool record_and_check(std::size_t num_change, std::size_t stop_frequency) {
    history_.push_back(num_change);
    const std::size_t seen = ++counts_[num_change];
    return num_change == 0 || seen >= stop_frequency;
  }

  std::size_t count(std::size_t num_change) const {
    auto it = counts_.find(num_change);
    return it == counts_.end() ? 0 : it->second;
  }

  std::span<const std::size_t> history() const noexcept { return history_; }

 private:
  std::unordered_map<std::size_t, std::size_t> counts_;
  std::vector<std::size_t> history_;
};

}  // namespace labelrank
