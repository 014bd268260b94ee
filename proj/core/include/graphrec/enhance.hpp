#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphrec/anonymize.hpp"
#include "graphrec/embed.hpp"
#include "graphrec/plausibility.hpp"

namespace graphrec {

/// Gaussian fitted to the original graph's edge plausibilities.
struct PlausibilityPrior {
  double mu = 0.0;
  double sigma = 1.0;

  [[nodiscard]] double density(double s) const;
};

/// Maximum-likelihood fit (divisor n). Needs two or more scores and
/// nonzero variance.
PlausibilityPrior fit_prior(std::span<const double> scores);
inline PlausibilityPrior fit_prior(const EdgeScores& scores) { return fit_prior(scores.values()); }

std::string prior_to_json(const PlausibilityPrior& prior);
PlausibilityPrior prior_from_json(const std::string& text);

/// Sequential draws without replacement, each proportional to `weights`
/// among the remaining entries. Returns indices into `weights`. If every
/// remaining weight is zero the rest are drawn uniformly.
std::vector<std::size_t> weighted_sample(std::span<const double> weights, std::size_t m, Rng& rng);

/// Picks up to m of `candidates` with weight prior.density(s(u, v)), where s
/// is the metric evaluated on emb.
std::vector<NodeId> weighted_pick(NodeId u, std::span<const NodeId> candidates, std::size_t m,
                                  const PlausibilityPrior& prior, const Embedding& emb, Rng& rng,
                                  Metric metric = Metric::cosine);

KdaResult enhanced_kda(const Graph& g, const KdaConfig& cfg, const PlausibilityPrior& prior, const Embedding& emb,
                       Metric metric = Metric::cosine);

SaladpResult enhanced_saladp(const Graph& g, const SaladpConfig& cfg, const PlausibilityPrior& prior,
                             const Embedding& emb, Metric metric = Metric::cosine);

}  // namespace graphrec
