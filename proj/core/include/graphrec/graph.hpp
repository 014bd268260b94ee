#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace graphrec {

using NodeId = std::uint32_t;

/// Unordered edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  [[nodiscard]] std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable undirected simple graph on nodes 0..node_count()-1.
///
/// Adjacency is kept in compressed sparse row form with every neighbor list
/// sorted ascending; the edge list is sorted by (u, v) with u < v. Isolated
/// nodes are part of the node universe.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary edge list. Self-loops and duplicates are
  /// rejected with GraphError; use GraphBuilder to collapse them instead.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  [[nodiscard]] std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }

  [[nodiscard]] std::span<const NodeId> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  [[nodiscard]] std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  [[nodiscard]] std::vector<std::size_t> degrees() const;
  [[nodiscard]] std::size_t max_degree() const;

  [[nodiscard]] bool has_edge(NodeId a, NodeId b) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
};

/// Mutable single-owner edge set used by the anonymizers.
///
/// Supports O(1) expected insert, erase, membership, and uniform sampling
/// of an existing edge.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t node_count);
  explicit GraphBuilder(const Graph& g);

  [[nodiscard]] std::size_t node_count() const noexcept { return adjacency_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] std::size_t degree(NodeId u) const { return adjacency_[u].size(); }
  [[nodiscard]] const std::vector<NodeId>& neighbors(NodeId u) const { return adjacency_[u]; }
  [[nodiscard]] bool has_edge(NodeId a, NodeId b) const;
  [[nodiscard]] const Edge& edge_at(std::size_t i) const { return edges_[i]; }

  /// Returns false for self-loops and edges already present.
  bool add_edge(NodeId a, NodeId b);
  /// Returns false if the edge is absent.
  bool remove_edge(NodeId a, NodeId b);

  [[nodiscard]] Graph build() const;

 private:
  void check_node(NodeId u) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Edges added and deleted when going from one graph to another on the same
/// node universe.
struct EdgeDiff {
  std::vector<Edge> added;    ///< in `other`, not in `original`; sorted
  std::vector<Edge> deleted;  ///< in `original`, not in `other`; sorted
};

EdgeDiff edge_diff(const Graph& original, const Graph& other);

/// Returns true iff every degree value present occurs at least k times.
bool is_k_degree_anonymous(const Graph& g, std::size_t k);

/// Jaccard similarity of the two edge sets (1 when both are empty).
double edge_jaccard(const Graph& a, const Graph& b);

}  // namespace graphrec
