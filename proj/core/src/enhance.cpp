#include "graphrec/enhance.hpp"

#include <cmath>
#include <numeric>

#include <json.hpp>

#include "graphrec/recover.hpp"

namespace graphrec {

double PlausibilityPrior::density(double s) const { return normal_pdf(s, mu, sigma); }

PlausibilityPrior fit_prior(std::span<const double> scores) {
  if (scores.size() < 2) throw std::invalid_argument("prior fitting needs at least two edge scores");
  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());
  double var = 0.0;
  for (double s : scores) var += (s - mean) * (s - mean);
  var /= static_cast<double>(scores.size());
  if (!(var > 0.0)) throw DegenerateInputError("edge plausibilities have zero variance");
  return {mean, std::sqrt(var)};
}

std::string prior_to_json(const PlausibilityPrior& prior) {
  nlohmann::ordered_json j;
  j["mu"] = prior.mu;
  j["sigma"] = prior.sigma;
  return j.dump(2);
}

PlausibilityPrior prior_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PlausibilityPrior p{j.at("mu").get<double>(), j.at("sigma").get<double>()};
  if (!(p.sigma > 0.0)) throw std::invalid_argument("prior sigma must be positive");
  return p;
}

std::vector<std::size_t> weighted_sample(std::span<const double> weights, std::size_t m, Rng& rng) {
  std::vector<std::size_t> remaining(weights.size());
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<std::size_t> out;
  m = std::min(m, weights.size());
  out.reserve(m);
  while (out.size() < m) {
    double total = 0.0;
    for (std::size_t i : remaining) total += weights[i];
    std::size_t slot = remaining.size() - 1;
    if (total > 0.0) {
      double r = uniform01(rng) * total;
      for (std::size_t j = 0; j < remaining.size(); ++j) {
        r -= weights[remaining[j]];
        if (r < 0.0) {
          slot = j;
          break;
        }
      }
      // rounding can leave r >= 0 after the loop; take the last positive weight
      if (slot == remaining.size() - 1) {
        while (slot > 0 && weights[remaining[slot]] <= 0.0) --slot;
      }
    } else {
      slot = uniform_index(rng, remaining.size());
    }
    out.push_back(remaining[slot]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
  }
  return out;
}

std::vector<NodeId> weighted_pick(NodeId u, std::span<const NodeId> candidates, std::size_t m,
                                  const PlausibilityPrior& prior, const Embedding& emb, Rng& rng, Metric metric) {
  if (candidates.size() <= m) return {candidates.begin(), candidates.end()};
  std::vector<double> weights;
  weights.reserve(candidates.size());
  for (NodeId v : candidates) weights.push_back(prior.density(embedding_score(emb, metric, u, v)));
  std::vector<NodeId> out;
  for (std::size_t i : weighted_sample(weights, m, rng)) out.push_back(candidates[i]);
  return out;
}

namespace {
void check_embedding_metric(Metric metric) {
  if (!uses_embedding(metric)) {
    throw std::invalid_argument("enhanced anonymization needs an embedding metric, got '" +
                                std::string(metric_name(metric)) + "'");
  }
}
}  // namespace

KdaResult enhanced_kda(const Graph& g, const KdaConfig& cfg, const PlausibilityPrior& prior, const Embedding& emb,
                       Metric metric) {
  check_embedding_metric(metric);
  if (emb.rows() < g.node_count()) throw std::invalid_argument("embedding does not cover every node");
  PartnerChooser chooser = [&](NodeId u, std::span<const NodeId> candidates, std::size_t m, Rng& rng) {
    return weighted_pick(u, candidates, m, prior, emb, rng, metric);
  };
  return kda_anonymize(g, cfg, chooser);
}

SaladpResult enhanced_saladp(const Graph& g, const SaladpConfig& cfg, const PlausibilityPrior& prior,
                             const Embedding& emb, Metric metric) {
  check_embedding_metric(metric);
  if (emb.rows() < g.node_count()) throw std::invalid_argument("embedding does not cover every node");
  PairChooser chooser = [&](NodeId u, std::span<const NodeId> candidates, Rng& rng) -> std::optional<NodeId> {
    if (candidates.empty()) return std::nullopt;
    return weighted_pick(u, candidates, 1, prior, emb, rng, metric).front();
  };
  return saladp_anonymize(g, cfg, chooser);
}

}  // namespace graphrec
