#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "labelrank/types.hpp"

namespace labelrank {

/// Undirected, unweighted graph in CSR form.
///
/// Each neighbor list is sorted ascending and duplicate free. A selfloop
/// appears once in its node's list and counts once towards the degree, so
/// `sum(degree) == 2 * non_loop_edges + selfloops`. Immutable once built.
class Graph {
 public:
  using edge = std::pair<node_id, node_id>;

  Graph() : offsets_{0} {}

  /// Builds a graph over nodes [0, n). Direction and duplicates are
  /// collapsed. `names`, when given, must hold one external id per node.
  static Graph from_edges(std::size_t n, std::span<const edge> edges,
                          std::vector<std::string> names = {}) {
    if (!names.empty() && names.size() != n) {
      throw error("node name count does not match node count");
    }
    std::vector<std::size_t> counts(n + 1, 0);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw error("edge endpoint out of range");
      ++counts[u + 1];
      if (u != v) ++counts[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];

    std::vector<node_id> targets(counts[n]);
    std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
    for (auto [u, v] : edges) {
      targets[fill[u]++] = v;
      if (u != v) targets[fill[v]++] = u;
    }

    Graph g;
    g.offsets_.assign(n + 1, 0);
    g.targets_.reserve(targets.size());
    for (std::size_t i = 0; i < n; ++i) {
      auto first = targets.begin() + static_cast<std::ptrdiff_t>(counts[i]);
      auto last = targets.begin() + static_cast<std::ptrdiff_t>(counts[i + 1]);
      std::sort(first, last);
      last = std::unique(first, last);
      for (auto it = first; it != last; ++it) {
        if (*it == i) ++g.selfloops_;
        g.targets_.push_back(*it);
      }
      g.offsets_[i + 1] = g.targets_.size();
    }
    g.edge_count_ = (g.targets_.size() - g.selfloops_) / 2 + g.selfloops_;
    g.set_names(std::move(names));
    return g;
  }

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }

  /// Undirected edges, each selfloop counted once.
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::size_t selfloop_count() const noexcept { return selfloops_; }

  std::span<const node_id> neighbors(node_id i) const {
    check(i);
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }

  std::size_t degree(node_id i) const {
    check(i);
    return offsets_[i + 1] - offsets_[i];
  }

  bool has_selfloop(node_id i) const {
    auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), i);
  }

  bool has_all_selfloops() const noexcept {
    return selfloops_ == node_count();
  }

  /// External id of node `i`; the decimal internal id when the graph is
  /// unnamed.
  std::string name(node_id i) const {
    check(i);
    return names_.empty() ? std::to_string(i) : names_[i];
  }

  bool has_names() const noexcept { return !names_.empty(); }

  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<node_id> find(std::string_view external) const {
    if (names_.empty()) {
      node_id v = 0;
      if (external.empty()) return std::nullopt;
      for (char c : external) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        v = v * 10 + static_cast<node_id>(c - '0');
      }
      if (v >= node_count()) return std::nullopt;
      return v;
    }
    auto it = index_.find(std::string(external));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Raw CSR arrays.
  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const node_id> targets() const noexcept { return targets_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_ &&
           a.names_ == b.names_;
  }

 private:
  void check(node_id i) const {
    if (i >= node_count()) {
      throw std::out_of_range("node id " + std::to_string(i) +
                              " out of range [0, " +
                              std::to_string(node_count()) + ")");
    }
  }

  void set_names(std::vector<std::string> names) {
    names_ = std::move(names);
    index_.clear();
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], static_cast<node_id>(i)).second) {
        throw error("duplicate node name '" + names_[i] + "'");
      }
    }
  }

  friend Graph add_selfloops(const Graph& g);

  std::vector<std::size_t> offsets_;
  std::vector<node_id> targets_;
  std::size_t edge_count_ = 0;
  std::size_t selfloops_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, node_id> index_;
};

/// Returns `g` with a selfloop on every node. Existing selfloops are kept
/// as they are, so the operation is idempotent.
inline Graph add_selfloops(const Graph& g) {
  if (g.has_all_selfloops()) return g;
  const std::size_t n = g.node_count();
  Graph out;
  out.offsets_.assign(n + 1, 0);
  out.targets_.reserve(g.targets_.size() + n - g.selfloops_);
  for (node_id i = 0; i < n; ++i) {
    auto nb = g.neighbors(i);
    auto pos = std::lower_bound(nb.begin(), nb.end(), i);
    out.targets_.insert(out.targets_.end(), nb.begin(), pos);
    out.targets_.push_back(i);
    if (pos != nb.end() && *pos == i) ++pos;
    out.targets_.insert(out.targets_.end(), pos, nb.end());
    out.offsets_[i + 1] = out.targets_.size();
  }
  out.selfloops_ = n;
  out.edge_count_ = (out.targets_.size() - n) / 2 + n;
  out.names_ = g.names_;
  out.index_ = g.index_;
  return out;
}

struct EdgeListOptions {
  /// Lines whose first non-blank characters match this prefix are skipped.
  std::string comment_prefix = "#";
  /// Field separator; 0 means any run of blanks.
  char separator = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  auto blank = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line,
                                                  char separator) {
  std::vector<std::string_view> fields;
  if (separator == 0) {
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() &&
             std::isspace(static_cast<unsigned char>(line[pos]))) {
        ++pos;
      }
      if (pos == line.size()) break;
      std::size_t end = pos;
      while (end < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[end]))) {
        ++end;
      }
      fields.push_back(line.substr(pos, end - pos));
      pos = end;
    }
  } else {
    std::size_t pos = 0;
    for (;;) {
      auto end = line.find(separator, pos);
      fields.push_back(trim(line.substr(pos, end - pos)));
      if (end == std::string_view::npos) break;
      pos = end + 1;
    }
  }
  return fields;
}

}  // namespace detail

/// Reads an undirected edge list: two node tokens per line. External ids
/// are mapped to dense ids in order of first appearance and kept as node
/// names. Weight columns are rejected.
inline Graph load_edge_list(std::istream& in, const EdgeListOptions& opts = {}) {
  std::unordered_map<std::string, node_id> ids;
  std::vector<std::string> names;
  std::vector<Graph::edge> edges;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] =
        ids.try_emplace(std::string(token), static_cast<node_id>(names.size()));
    if (inserted) names.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = detail::trim(line);
    if (body.empty()) continue;
    if (!opts.comment_prefix.empty() && body.starts_with(opts.comment_prefix)) {
      continue;
    }
    auto fields = detail::split_fields(body, opts.separator);
    if (fields.size() != 2) {
      throw parse_error("expected 2 node tokens, found " +
                            std::to_string(fields.size()),
                        line_no);
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw parse_error("empty node token", line_no);
    }
    node_id u = intern(fields[0]);
    node_id v = intern(fields[1]);
    edges.emplace_back(u, v);
  }
  if (edges.empty()) throw parse_error("edge list contains no edges", 0);
  const std::size_t n = names.size();
  return Graph::from_edges(n, edges, std::move(names));
}

inline Graph load_edge_list_file(const std::string& path,
                                 const EdgeListOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path + "'");
  return load_edge_list(in, opts);
}

/// Writes each undirected edge once, as `name<TAB>name`, smaller id first.
/// Isolated nodes cannot be represented and are dropped.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  for (node_id i = 0; i < g.node_count(); ++i) {
    for (node_id j : g.neighbors(i)) {
      if (j < i) continue;
      out << g.name(i) << '\t' << g.name(j) << '\n';
    }
  }
}

}  // namespace labelrank
