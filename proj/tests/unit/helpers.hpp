#pragma once

#include <limits>
#include <map>
#include <vector>

#include "graphrec/graph.hpp"

namespace graphrec::test {

inline bool k_anonymous_oracle(const Graph& g, std::size_t k) {
  std::map<std::size_t, std::size_t> count;
  for (NodeId u = 0; u < g.node_count(); ++u) ++count[g.degree(u)];
  for (const auto& [deg, c] : count) {
    if (c < k) return false;
  }
  return true;
}

/// Minimum cost over every split of the descending-sorted sequence into
/// contiguous runs of length k..2k-1, by plain recursion.
inline std::size_t exhaustive_kda_cost(const std::vector<std::size_t>& sorted_desc, std::size_t k, std::size_t from = 0) {
  const std::size_t n = sorted_desc.size();
  if (from == n) return 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t len = k; len <= 2 * k - 1 && from + len <= n; ++len) {
    std::size_t cost = 0;
    for (std::size_t i = from; i < from + len; ++i) cost += sorted_desc[from] - sorted_desc[i];
    const std::size_t rest = exhaustive_kda_cost(sorted_desc, k, from + len);
    if (rest != std::numeric_limits<std::size_t>::max()) best = std::min(best, cost + rest);
  }
  return best;
}

inline Graph clique_pair(std::size_t size, bool bridge) {
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) {
        edges.emplace_back(static_cast<NodeId>(c * size + i), static_cast<NodeId>(c * size + j));
      }
    }
  }
  if (bridge) edges.emplace_back(static_cast<NodeId>(size - 1), static_cast<NodeId>(size));
  return Graph(2 * size, std::move(edges));
}

}  // namespace graphrec::test
