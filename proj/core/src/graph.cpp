#include "graphrec/graph.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace graphrec {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges) : edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.u == e.v) throw GraphError("self-loop on node " + std::to_string(e.u));
    if (e.v >= node_count) {
      throw GraphError("edge endpoint " + std::to_string(e.v) + " outside node universe of size " +
                       std::to_string(node_count));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw GraphError("duplicate edge in edge list");
  }

  offsets_.assign(node_count + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 1; i <= node_count; ++i) offsets_[i] += offsets_[i - 1];

  adjacency_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
  for (std::size_t u = 0; u < node_count; ++u) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]));
  }
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(node_count());
  for (std::size_t u = 0; u < out.size(); ++u) out[u] = degree(static_cast<NodeId>(u));
  return out;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t u = 0; u < node_count(); ++u) best = std::max(best, degree(static_cast<NodeId>(u)));
  return best;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a >= node_count() || b >= node_count() || a == b) return false;
  if (degree(a) > degree(b)) std::swap(a, b);
  auto nbrs = neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

GraphBuilder::GraphBuilder(std::size_t node_count) : adjacency_(node_count) {}

GraphBuilder::GraphBuilder(const Graph& g) : adjacency_(g.node_count()) {
  edges_.reserve(g.edge_count());
  index_.reserve(g.edge_count() * 2);
  for (const Edge& e : g.edges()) add_edge(e.u, e.v);
}

void GraphBuilder::check_node(NodeId u) const {
  if (u >= adjacency_.size()) {
    throw GraphError("node " + std::to_string(u) + " outside node universe of size " +
                     std::to_string(adjacency_.size()));
  }
}

bool GraphBuilder::has_edge(NodeId a, NodeId b) const {
  if (a == b) return false;
  return index_.contains(Edge(a, b).key());
}

bool GraphBuilder::add_edge(NodeId a, NodeId b) {
  check_node(a);
  check_node(b);
  if (a == b) return false;
  const Edge e(a, b);
  auto [it, inserted] = index_.try_emplace(e.key(), edges_.size());
  if (!inserted) return false;
  edges_.push_back(e);
  adjacency_[a].push_back(b);
  adjacency_[b].push_back(a);
  return true;
}

namespace {
void erase_value(std::vector<NodeId>& v, NodeId x) {
  auto it = std::find(v.begin(), v.end(), x);
  *it = v.back();
  v.pop_back();
}
}  // namespace

bool GraphBuilder::remove_edge(NodeId a, NodeId b) {
  if (a == b) return false;
  const Edge e(a, b);
  auto it = index_.find(e.key());
  if (it == index_.end()) return false;
  const std::size_t slot = it->second;
  index_.erase(it);
  if (slot + 1 != edges_.size()) {
    edges_[slot] = edges_.back();
    index_[edges_[slot].key()] = slot;
  }
  edges_.pop_back();
  erase_value(adjacency_[a], b);
  erase_value(adjacency_[b], a);
  return true;
}

Graph GraphBuilder::build() const { return Graph(adjacency_.size(), edges_); }

EdgeDiff edge_diff(const Graph& original, const Graph& other) {
  if (original.node_count() != other.node_count()) {
    throw GraphError("edge_diff: node universes differ (" + std::to_string(original.node_count()) + " vs " +
                     std::to_string(other.node_count()) + ")");
  }
  EdgeDiff diff;
  auto a = original.edges();
  auto b = other.edges();
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(diff.added));
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff.deleted));
  return diff;
}

bool is_k_degree_anonymous(const Graph& g, std::size_t k) {
  std::map<std::size_t, std::size_t> multiplicity;
  for (std::size_t u = 0; u < g.node_count(); ++u) ++multiplicity[g.degree(static_cast<NodeId>(u))];
  return std::all_of(multiplicity.begin(), multiplicity.end(), [k](const auto& kv) { return kv.second >= k; });
}

double edge_jaccard(const Graph& a, const Graph& b) {
  auto ea = a.edges();
  auto eb = b.edges();
  std::size_t common = 0;
  auto i = ea.begin();
  auto j = eb.begin();
  while (i != ea.end() && j != eb.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = ea.size() + eb.size() - common;
  return uni == 0 ? 1.0 : static_cast<double>(common) / static_cast<double>(uni);
}

}  // namespace graphrec
