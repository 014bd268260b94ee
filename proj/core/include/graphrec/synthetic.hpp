#pragma once

#include <cstdint>

#include "graphrec/graph.hpp"

namespace graphrec {

/// G(n, p).
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Ego-network style social graph: a handful of communities, each with a hub
/// joined to every member, split into dense friend circles whose edge
/// probabilities follow heavy-tailed node fitness. The defaults give about
/// 4k nodes and 88k edges.
struct SocialGraphParams {
  std::size_t nodes = 4039;
  std::size_t communities = 10;
  std::size_t min_circle = 20;
  std::size_t max_circle = 165;
  double circle_density = 0.70;   ///< within-circle edge probability at mean fitness
  double circle_bridges = 1.6;    ///< edges per node to other circles of its community
  double community_bridges = 0.05;  ///< edges per node to other communities
  double fitness_exponent = 2.5;  ///< Pareto tail of node fitness
};

Graph social_graph(const SocialGraphParams& params, std::uint64_t seed);

}  // namespace graphrec
