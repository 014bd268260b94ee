#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphrec/graph.hpp"
#include "graphrec/plausibility.hpp"

namespace graphrec {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  std::vector<RocPoint> points;  ///< (0,0) to (1,1), one point per distinct threshold
  double auc = 0.0;
};

/// ROC with fake edges as the positive class, ranked by negated
/// plausibility. `labels[i]` is true when record i is fake. Throws
/// std::invalid_argument without positives or negatives.
RocResult roc_curve(std::span<const double> plausibility, const std::vector<bool>& labels);

/// Labels every scored edge by membership in truth.added.
std::vector<bool> fake_labels(const EdgeScores& scores, const EdgeDiff& truth);

RocResult roc_auc(const EdgeScores& scores, const EdgeDiff& truth);

/// Probability that a random fake edge has lower plausibility than a random
/// original edge, ties counted one half.
double auc_rank_statistic(std::span<const double> plausibility, const std::vector<bool>& labels);

/// Area under the piecewise-linear curve through `points`.
double trapezoid_area(std::span<const RocPoint> points);

void write_roc_csv(std::ostream& out, const RocResult& roc);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

/// Throws std::invalid_argument for an empty prediction or no added edges.
PrecisionRecall precision_recall(std::span<const Edge> predicted, const EdgeDiff& truth);

/// Mean absolute per-node degree difference. Throws on a node-count mismatch.
double degree_difference(const Graph& g, const Graph& other);

struct NoiseStats {
  double zeta = 0.0;     ///< mean over cells of mean |noise|
  double entropy = 0.0;  ///< mean over cells of the noise-value entropy, bits
};

/// Per-cell dK-2 noise of each sample relative to g, over the union of the
/// cells of g and the samples.
NoiseStats dk2_noise_stats(const Graph& g, std::span<const Graph> samples);

struct UtilityVectors {
  std::vector<double> degree_distribution;  ///< fraction of nodes per degree 0..max
  std::vector<double> eigencentrality;      ///< unit L2 norm, nonnegative
  std::vector<double> triangle_count;       ///< triangles through each node
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Principal eigenvector of the adjacency matrix by power iteration on A + I,
/// stopping when successive iterates move less than `tolerance` in L2.
std::vector<double> eigencentrality(const Graph& g, double tolerance = 1e-10, std::size_t max_iterations = 10000);
std::vector<double> triangle_counts(const Graph& g);
std::vector<double> degree_distribution(const Graph& g);

UtilityVectors utility_vectors(const Graph& g);

/// Cosine similarity; the shorter vector is zero-padded. MetricError on a
/// zero vector.
double vector_cosine(std::span<const double> a, std::span<const double> b);

struct UtilitySimilarity {
  double degree_distribution = 0.0;
  double eigencentrality = 0.0;
  double triangle_count = 0.0;
};

UtilitySimilarity utility_similarity(const UtilityVectors& a, const UtilityVectors& b);

}  // namespace graphrec
