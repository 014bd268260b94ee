#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graphrec/embed.hpp"
#include "graphrec/graph.hpp"

namespace graphrec {

enum class Metric { cosine, euclidean, bray_curtis, embeddedness, jaccard, adamic_adar };

inline constexpr Metric kAllMetrics[] = {Metric::cosine,       Metric::euclidean, Metric::bray_curtis,
                                         Metric::embeddedness, Metric::jaccard,   Metric::adamic_adar};

std::string_view metric_name(Metric m);
/// Throws std::invalid_argument for unknown names.
Metric parse_metric(std::string_view name);
/// True for the metrics computed from embedding vectors.
bool uses_embedding(Metric m);

class MetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Cosine similarity; MetricError if either vector has zero norm.
double cosine(std::span<const float> a, std::span<const float> b);
double euclidean(std::span<const float> a, std::span<const float> b);
/// sum|a_i - b_i| / sum|a_i + b_i|; MetricError on a zero denominator.
double bray_curtis(std::span<const float> a, std::span<const float> b);

struct StructuralScores {
  std::size_t embeddedness = 0;
  double jaccard = 0.0;
  double adamic_adar = 0.0;
};

/// Common-neighbor baselines for the node pair of `edge`. Jaccard of two
/// empty neighborhoods is 0; Adamic-Adar uses the natural log.
StructuralScores structural_baselines(const Graph& g, Edge edge);

struct EdgeScore {
  NodeId u = 0;
  NodeId v = 0;
  double score = 0.0;
};

/// One score per edge, sorted by (u, v). Higher always means more
/// plausible: distance metrics are stored negated.
struct EdgeScores {
  Metric metric = Metric::cosine;
  std::vector<EdgeScore> records;

  [[nodiscard]] std::vector<double> values() const;
};

/// Scores every edge of g. Embedding metrics need `emb` to cover every
/// endpoint; structural metrics ignore it.
EdgeScores score_edges(const Graph& g, const Embedding* emb, Metric metric);
inline EdgeScores score_edges(const Graph& g, const Embedding& emb, Metric metric) {
  return score_edges(g, &emb, metric);
}

/// Embedding-metric plausibility of a node pair; std::out_of_range names a
/// node without a vector.
double embedding_score(const Embedding& emb, Metric metric, NodeId u, NodeId v);

/// Plausibility of an arbitrary node pair (not necessarily an edge).
double pair_score(const Graph& g, const Embedding* emb, Metric metric, NodeId u, NodeId v);

/// CSV "u,v,score,metric".
void write_scores_csv(std::ostream& out, const EdgeScores& scores);
EdgeScores read_scores_csv(std::istream& in);
void save_scores_csv(const std::filesystem::path& path, const EdgeScores& scores);
EdgeScores load_scores_csv(const std::filesystem::path& path);

}  // namespace graphrec
