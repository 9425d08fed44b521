#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "labelrank/graph.hpp"
#include "labelrank/partition.hpp"

namespace labelrank {

/// Reads a `node community` file for the nodes of `g`. Uses the edge-list
/// syntax; every node of `g` must be listed exactly once.
inline Partition load_ground_truth(std::istream& in, const Graph& g,
                                   const EdgeListOptions& opts = {}) {
  std::vector<std::optional<std::string>> labels(g.node_count());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = detail::trim(line);
    if (body.empty()) continue;
    if (!opts.comment_prefix.empty() && body.starts_with(opts.comment_prefix)) continue;
    auto fields = detail::split_fields(body, opts.separator);
    if (fields.size() != 2) {
      throw parse_error("expected node and community, found " +
                            std::to_string(fields.size()) + " fields",
                        line_no);
    }
    auto node = g.find(fields[0]);
    if (!node) throw parse_error("unknown node '" + std::string(fields[0]) + "'", line_no);
    if (labels[*node]) {
      throw parse_error("node '" + std::string(fields[0]) + "' listed twice", line_no);
    }
    labels[*node] = std::string(fields[1]);
  }
  std::vector<std::string> flat;
  flat.reserve(labels.size());
  for (node_id i = 0; i < labels.size(); ++i) {
    if (!labels[i]) throw parse_error("node '" + g.name(i) + "' has no community", 0);
    flat.push_back(std::move(*labels[i]));
  }
  return Partition::from_labels(flat);
}

inline Partition load_ground_truth_file(const std::string& path, const Graph& g,
                                        const EdgeListOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path + "'");
  return load_ground_truth(in, g, opts);
}

}  // namespace labelrank
