#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graphrec/anonymize.hpp"

namespace graphrec {

double dk2_cell_sensitivity(const DegreePair& cell) { return 4.0 * static_cast<double>(cell.high) + 1.0; }

DK2Series saladp_noise_dk2(const DK2Series& series, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  Rng rng = make_rng(seed, 0x6e6f697365);
  DK2Series noised;
  for (const auto& [cell, count] : series.cells) {
    const double noisy = static_cast<double>(count) + laplace(rng, dk2_cell_sensitivity(cell) / epsilon);
    // std::round rounds half away from zero
    noised.cells[cell] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::round(noisy)));
  }
  return noised;
}

SaladpResult saladp_realize(const Graph& g, const DK2Series& target, Rng& rng, const PairChooser& chooser) {
  const std::size_t n = g.node_count();
  const std::vector<std::size_t> degree = g.degrees();

  std::map<std::size_t, std::vector<NodeId>> by_degree;
  for (std::size_t u = 0; u < n; ++u) by_degree[degree[u]].push_back(static_cast<NodeId>(u));

  std::map<DegreePair, std::vector<Edge>> cell_edges;
  for (const Edge& e : g.edges()) cell_edges[DegreePair(degree[e.u], degree[e.v])].push_back(e);

  SaladpResult result;
  result.original = dk2_series(g);
  result.target = target;

  GraphBuilder builder(g);
  std::vector<NodeId> candidates;

  for (const auto& [cell, wanted] : target.cells) {
    const std::int64_t delta = wanted - result.original.at(cell);
    if (delta < 0) {
      std::vector<Edge>& pool = cell_edges[cell];
      std::int64_t removed = 0;
      // partial Fisher-Yates: the first |delta| entries become a uniform sample
      for (std::size_t i = 0; i < pool.size() && removed < -delta; ++i) {
        std::swap(pool[i], pool[i + uniform_index(rng, pool.size() - i)]);
        if (builder.remove_edge(pool[i].u, pool[i].v)) ++removed;
      }
      result.edges_deleted += static_cast<std::size_t>(removed);
      result.unmet_deletions += -delta - removed;
      continue;
    }
    if (delta == 0) continue;

    auto low_it = by_degree.find(cell.low);
    auto high_it = by_degree.find(cell.high);
    if (low_it == by_degree.end() || high_it == by_degree.end()) {
      result.unmet_additions += delta;
      continue;
    }
    const std::vector<NodeId>& first_class = low_it->second;
    const std::vector<NodeId>& second_class = high_it->second;

    std::int64_t added = 0;
    std::size_t attempts = 0;
    const std::size_t max_attempts = 50 * static_cast<std::size_t>(delta);
    while (added < delta && attempts < max_attempts) {
      ++attempts;
      const NodeId u = first_class[uniform_index(rng, first_class.size())];
      NodeId v = u;
      if (!chooser) {
        v = second_class[uniform_index(rng, second_class.size())];
      } else {
        candidates.clear();
        for (NodeId w : second_class) {
          if (w != u && !builder.has_edge(u, w)) candidates.push_back(w);
        }
        if (candidates.empty()) continue;
        std::optional<NodeId> pick = chooser(u, candidates, rng);
        if (!pick) continue;
        v = *pick;
      }
      if (builder.add_edge(u, v)) ++added;
    }
    result.edges_added += static_cast<std::size_t>(added);
    result.unmet_additions += delta - added;
  }

  result.graph = builder.build();
  return result;
}

SaladpResult saladp_anonymize(const Graph& g, const SaladpConfig& cfg, const PairChooser& chooser) {
  const DK2Series noised = saladp_noise_dk2(dk2_series(g), cfg.epsilon, cfg.seed);
  Rng rng = make_rng(cfg.seed, 0x73616c61);
  return saladp_realize(g, noised, rng, chooser);
}

}  // namespace graphrec
