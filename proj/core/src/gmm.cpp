#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "graphrec/recover.hpp"
#include "graphrec/rng.hpp"

namespace graphrec {

void GmmParams::validate() const {
  if (!(w0 >= 0.0 && w1 >= 0.0) || std::abs(w0 + w1 - 1.0) > 1e-9) {
    throw std::invalid_argument("GMM weights must be nonnegative and sum to 1");
  }
  if (!(sigma0 > 0.0 && sigma1 > 0.0)) throw std::invalid_argument("GMM standard deviations must be positive");
  if (!std::isfinite(mu0) || !std::isfinite(mu1)) throw std::invalid_argument("GMM means must be finite");
}

double normal_log_pdf(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return -0.5 * z * z - std::log(sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double normal_pdf(double x, double mu, double sigma) { return std::exp(normal_log_pdf(x, mu, sigma)); }

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_or_neg_inf(double w) { return w > 0.0 ? std::log(w) : kNegInf; }

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

struct Component {
  double w = 0.5;
  double mu = 0.0;
  double sigma = 1.0;
};

struct Run {
  Component c[2];
  double loglik = kNegInf;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

/// E-step: fills resp with P(component 1 | x) and returns the log-likelihood.
double e_step(std::span<const double> xs, const Component (&c)[2], std::vector<double>& resp) {
  const double lw0 = log_or_neg_inf(c[0].w);
  const double lw1 = log_or_neg_inf(c[1].w);
  double ll = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a = lw0 + normal_log_pdf(xs[i], c[0].mu, c[0].sigma);
    const double b = lw1 + normal_log_pdf(xs[i], c[1].mu, c[1].sigma);
    const double total = log_add(a, b);
    resp[i] = b == kNegInf ? 0.0 : std::exp(b - total);
    ll += total;
  }
  return ll;
}

void m_step(std::span<const double> xs, const std::vector<double>& resp, Component (&c)[2], double sigma_floor) {
  double n[2] = {0.0, 0.0};
  double sx[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    n[1] += resp[i];
    n[0] += 1.0 - resp[i];
    sx[1] += resp[i] * xs[i];
    sx[0] += (1.0 - resp[i]) * xs[i];
  }
  double mu[2];
  for (int k = 0; k < 2; ++k) mu[k] = n[k] > 0.0 ? sx[k] / n[k] : c[k].mu;
  double sxx[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d0 = xs[i] - mu[0];
    const double d1 = xs[i] - mu[1];
    sxx[0] += (1.0 - resp[i]) * d0 * d0;
    sxx[1] += resp[i] * d1 * d1;
  }
  const double total = n[0] + n[1];
  for (int k = 0; k < 2; ++k) {
    c[k].w = n[k] / total;
    if (n[k] > 0.0) {
      c[k].mu = mu[k];
      c[k].sigma = std::max(std::sqrt(sxx[k] / n[k]), sigma_floor);
    }
  }
}

Run run_em(std::span<const double> xs, Run run, const GmmOptions& opt) {
  std::vector<double> resp(xs.size());
  double ll = e_step(xs, run.c, resp);
  run.trace.push_back(ll);
  for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
    m_step(xs, resp, run.c, opt.sigma_floor);
    const double next = e_step(xs, run.c, resp);
    run.trace.push_back(next);
    run.iterations = it;
    const bool done = std::abs(next - ll) < opt.tolerance;
    ll = next;
    if (done) {
      run.converged = true;
      break;
    }
  }
  run.loglik = ll;
  return run;
}

double percentile(std::vector<double> sorted_copy, double q) {
  const double pos = q * static_cast<double>(sorted_copy.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return sorted_copy[lo] + (sorted_copy[hi] - sorted_copy[lo]) * (pos - static_cast<double>(lo));
}

}  // namespace

double gmm_log_likelihood(std::span<const double> scores, const GmmParams& params) {
  const double lw0 = log_or_neg_inf(params.w0);
  const double lw1 = log_or_neg_inf(params.w1);
  double ll = 0.0;
  for (double x : scores) {
    ll += log_add(lw0 + normal_log_pdf(x, params.mu0, params.sigma0), lw1 + normal_log_pdf(x, params.mu1, params.sigma1));
  }
  return ll;
}

GmmFit fit_gmm(std::span<const double> scores, const GmmOptions& options) {
  if (scores.size() < 2) throw DegenerateInputError("GMM fitting needs at least two scores");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) throw DegenerateInputError("all scores are identical; cannot fit a mixture");
  for (double x : sorted) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite score passed to GMM fitting");
  }

  double mean = 0.0;
  for (double x : sorted) mean += x;
  mean /= static_cast<double>(sorted.size());
  double var = 0.0;
  for (double x : sorted) var += (x - mean) * (x - mean);
  const double sd = std::max(std::sqrt(var / static_cast<double>(sorted.size())), options.sigma_floor);

  const double p10 = percentile(sorted, 0.10);
  const double p90 = percentile(sorted, 0.90);

  Rng rng = make_rng(options.seed, 0x676d6d);
  std::normal_distribution<double> jitter(0.0, 0.25 * sd);

  Run best;
  for (std::size_t r = 0; r <= options.restarts; ++r) {
    Run start;
    double lo = p10;
    double hi = p90;
    if (r > 0) {
      lo += jitter(rng);
      hi += jitter(rng);
    }
    start.c[0] = {0.5, hi, sd};
    start.c[1] = {0.5, lo, sd};
    Run done = run_em(scores, std::move(start), options);
    if (r == 0 || done.loglik > best.loglik) best = std::move(done);
  }

  // component 1 = fake = smaller mean
  if (best.c[0].mu < best.c[1].mu) std::swap(best.c[0], best.c[1]);

  GmmFit fit;
  fit.params = {best.c[0].w, best.c[0].mu, best.c[0].sigma, best.c[1].w, best.c[1].mu, best.c[1].sigma};
  fit.loglik = best.loglik;
  fit.iterations = best.iterations;
  fit.converged = best.converged;
  fit.loglik_trace = std::move(best.trace);
  return fit;
}

}  // namespace graphrec
