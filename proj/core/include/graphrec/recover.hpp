#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphrec/graph.hpp"
#include "graphrec/plausibility.hpp"

namespace graphrec {

/// Two-component univariate Gaussian mixture. Component 0 models original
/// edges, component 1 fake edges (the lower-mean component).
struct GmmParams {
  double w0 = 0.5;
  double mu0 = 0.0;
  double sigma0 = 1.0;
  double w1 = 0.5;
  double mu1 = 0.0;
  double sigma1 = 1.0;

  void validate() const;
};

struct GmmOptions {
  double tolerance = 1e-3;  ///< stop when the log-likelihood moves less than this
  std::size_t max_iterations = 500;
  std::size_t restarts = 5;  ///< jittered restarts on top of the percentile start
  double sigma_floor = 1e-4;
  std::uint64_t seed = 1;
};

struct GmmFit {
  GmmParams params;
  double loglik = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  /// log-likelihood of the winning run, one entry per evaluated parameter set
  std::vector<double> loglik_trace;
};

class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double normal_pdf(double x, double mu, double sigma);
double normal_log_pdf(double x, double mu, double sigma);
double gmm_log_likelihood(std::span<const double> scores, const GmmParams& params);

/// EM for a two-component mixture. Needs at least two distinct values.
GmmFit fit_gmm(std::span<const double> scores, const GmmOptions& options = {});
inline GmmFit fit_gmm(const EdgeScores& scores, const GmmOptions& options = {}) {
  return fit_gmm(scores.values(), options);
}

struct Posterior {
  double p_original = 1.0;
  double p_fake = 0.0;
  bool fake = false;
};

/// Posterior of one score. Fake iff P(fake|s) > P(original|s).
Posterior posterior(double score, const GmmParams& params);

struct PosteriorTable {
  std::vector<EdgeScore> edges;
  std::vector<Posterior> rows;

  [[nodiscard]] std::vector<Edge> predicted_fake() const;
};

PosteriorTable map_classify(const EdgeScores& scores, const GmmParams& params);

/// ga minus every edge labeled fake. The table must cover exactly E(ga).
Graph recover_graph(const Graph& ga, const PosteriorTable& table);

/// Uniform sample of n_fake edges of ga without replacement, sorted.
std::vector<Edge> baseline_random(const Graph& ga, std::size_t n_fake, std::uint64_t seed);

/// {w0, mu0, sigma0, w1, mu1, sigma1, loglik, iterations, converged}
std::string gmm_fit_to_json(const GmmFit& fit);
GmmFit gmm_fit_from_json(const std::string& text);

/// CSV "u,v,score,p_original,p_fake,label".
void write_posterior_csv(std::ostream& out, const PosteriorTable& table);
PosteriorTable read_posterior_csv(std::istream& in);

}  // namespace graphrec
