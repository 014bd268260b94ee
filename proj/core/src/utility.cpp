#include <algorithm>
#include <cmath>

#include "graphrec/metrics.hpp"

namespace graphrec {

std::vector<double> degree_distribution(const Graph& g) {
  std::vector<double> out(g.node_count() == 0 ? 0 : g.max_degree() + 1, 0.0);
  for (NodeId u = 0; u < g.node_count(); ++u) out[g.degree(u)] += 1.0;
  for (double& x : out) x /= static_cast<double>(g.node_count());
  return out;
}

std::vector<double> eigencentrality(const Graph& g, double tolerance, std::size_t max_iterations) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  // A + I has the same eigenvectors as A and a strictly dominant top
  // eigenvalue on bipartite components, where plain A oscillates.
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (NodeId u = 0; u < n; ++u) {
      double s = x[u];
      for (NodeId v : g.neighbors(u)) s += x[v];
      y[u] = s;
    }
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= norm;
      delta += (y[i] - x[i]) * (y[i] - x[i]);
    }
    x.swap(y);
    if (std::sqrt(delta) < tolerance) return x;
  }
  throw ConvergenceError("eigencentrality power iteration did not converge");
}

std::vector<double> triangle_counts(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  std::vector<char> mark(n, 0);
  // each triangle u < v < w is found once from its smallest node
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) mark[v] = 1;
    for (NodeId v : g.neighbors(u)) {
      if (v <= u) continue;
      for (NodeId w : g.neighbors(v)) {
        if (w > v && mark[w]) {
          out[u] += 1.0;
          out[v] += 1.0;
          out[w] += 1.0;
        }
      }
    }
    for (NodeId v : g.neighbors(u)) mark[v] = 0;
  }
  return out;
}

UtilityVectors utility_vectors(const Graph& g) {
  return {degree_distribution(g), eigencentrality(g), triangle_counts(g)};
}

double vector_cosine(std::span<const double> a, std::span<const double> b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    ab += x * y;
    aa += x * x;
    bb += y * y;
  }
  if (aa == 0.0 || bb == 0.0) throw MetricError("cosine similarity of a zero vector");
  return std::clamp(ab / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

UtilitySimilarity utility_similarity(const UtilityVectors& a, const UtilityVectors& b) {
  if (a.eigencentrality.size() != b.eigencentrality.size() || a.triangle_count.size() != b.triangle_count.size()) {
    throw std::invalid_argument("per-node utility vectors cover different node sets");
  }
  return {vector_cosine(a.degree_distribution, b.degree_distribution),
          vector_cosine(a.eigencentrality, b.eigencentrality), vector_cosine(a.triangle_count, b.triangle_count)};
}

}  // namespace graphrec
