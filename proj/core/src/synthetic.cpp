#include "graphrec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "graphrec/rng.hpp"

namespace graphrec {

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability must lie in [0, 1]");
  Rng rng = make_rng(seed, 0x6572);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

Graph social_graph(const SocialGraphParams& params, std::uint64_t seed) {
  const std::size_t n = params.nodes;
  if (params.communities == 0 || n < params.communities * 2) throw std::invalid_argument("too few nodes for the communities");
  if (params.min_circle < 2 || params.max_circle < params.min_circle) throw std::invalid_argument("bad circle size range");
  if (params.fitness_exponent <= 2.0) throw std::invalid_argument("fitness exponent must exceed 2");
  Rng rng = make_rng(seed, 0x736f63);

  // community sizes from log-normal shares
  std::lognormal_distribution<double> share(0.0, 1.0);
  std::vector<double> shares(params.communities);
  for (double& s : shares) s = share(rng);
  const double share_sum = std::accumulate(shares.begin(), shares.end(), 0.0);
  std::vector<std::size_t> sizes(params.communities, 2);
  std::size_t assigned = 2 * params.communities;
  for (std::size_t c = 0; c < params.communities; ++c) {
    const auto extra = static_cast<std::size_t>(std::floor(shares[c] / share_sum * static_cast<double>(n - 2 * params.communities)));
    sizes[c] += extra;
    assigned += extra;
  }
  for (std::size_t c = 0; assigned < n; c = (c + 1) % params.communities, ++assigned) ++sizes[c];

  // node fitness, Pareto with unit scale
  const double a = params.fitness_exponent;
  const double mean_fitness = (a - 1.0) / (a - 2.0);
  std::vector<double> fitness(n);
  for (double& f : fitness) f = std::pow(1.0 - uniform01(rng), -1.0 / (a - 1.0));

  // shuffle ids so communities are not contiguous blocks
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::shuffle(ids.begin(), ids.end(), rng);

  std::vector<Edge> edges;
  auto link = [&](NodeId x, NodeId y) {
    if (x != y) edges.emplace_back(x, y);
  };

  std::uniform_int_distribution<std::size_t> circle_size(params.min_circle, params.max_circle);
  std::size_t next = 0;
  for (std::size_t c = 0; c < params.communities; ++c) {
    const NodeId hub = ids[next];
    std::vector<NodeId> members(ids.begin() + static_cast<std::ptrdiff_t>(next + 1),
                                ids.begin() + static_cast<std::ptrdiff_t>(next + sizes[c]));
    next += sizes[c];
    for (NodeId v : members) link(hub, v);

    for (std::size_t begin = 0; begin < members.size();) {
      std::size_t end = std::min(members.size(), begin + circle_size(rng));
      if (members.size() - end < params.min_circle) end = members.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = i + 1; j < end; ++j) {
          const double p = std::min(1.0, params.circle_density * fitness[members[i]] * fitness[members[j]] /
                                             (mean_fitness * mean_fitness));
          if (uniform01(rng) < p) link(members[i], members[j]);
        }
      }
      begin = end;
    }

    if (members.size() > 1) {
      for (NodeId v : members) {
        std::poisson_distribution<int> count(params.circle_bridges * fitness[v] / mean_fitness);
        for (int b = count(rng); b > 0; --b) link(v, members[uniform_index(rng, members.size())]);
      }
    }
  }

  for (NodeId v = 0; v < n; ++v) {
    std::poisson_distribution<int> count(params.community_bridges * fitness[v] / mean_fitness);
    for (int b = count(rng); b > 0; --b) link(v, static_cast<NodeId>(uniform_index(rng, n)));
  }

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, std::move(edges));
}

}  // namespace graphrec
