#include <doctest.h>

#include <cmath>
#include <random>

#include "graphrec/enhance.hpp"
#include "graphrec/recover.hpp"
#include "graphrec/synthetic.hpp"
#include "helpers.hpp"

using namespace graphrec;

namespace {

Embedding random_embedding(std::size_t rows, std::size_t dim, std::uint64_t seed) {
  Embedding emb(rows, dim);
  std::mt19937_64 gen(seed);
  std::normal_distribution<float> nd;
  for (auto& x : emb.data()) x = nd(gen);
  return emb;
}

}  // namespace

TEST_CASE("prior is the maximum-likelihood Gaussian") {
  const PlausibilityPrior p = fit_prior(std::vector<double>{0.5, 0.7});
  CHECK(p.mu == doctest::Approx(0.6));
  CHECK(p.sigma == doctest::Approx(0.1));
  CHECK(p.density(0.6) == doctest::Approx(1.0 / (0.1 * std::sqrt(2.0 * M_PI))));
  CHECK_THROWS_AS(fit_prior(std::vector<double>(5, 0.3)), DegenerateInputError);
  CHECK_THROWS(fit_prior(std::vector<double>{0.3}));
  const PlausibilityPrior back = prior_from_json(prior_to_json(p));
  CHECK(back.mu == p.mu);
  CHECK(back.sigma == p.sigma);
}

TEST_CASE("weighted sampling follows the weights") {
  Rng rng = make_rng(7);
  const std::vector<double> w{9.0, 1.0};
  int first = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) first += weighted_sample(w, 1, rng)[0] == 0 ? 1 : 0;
  CHECK(first / static_cast<double>(draws) == doctest::Approx(0.9).epsilon(0.01));
}

TEST_CASE("equal weights sample uniformly") {
  Rng rng = make_rng(8);
  const std::size_t n = 10;
  const std::vector<double> w(n, 2.5);
  std::vector<double> counts(n, 0.0);
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) counts[weighted_sample(w, 1, rng)[0]] += 1.0;
  const double expected = draws / static_cast<double>(n);
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 9 degrees of freedom, 99.9th percentile is 27.9
  CHECK(chi2 < 27.9);
}

TEST_CASE("weighted sampling draws distinct indices and falls back to uniform") {
  Rng rng = make_rng(9);
  const std::vector<double> w{0.0, 3.0, 0.0, 1.0, 0.0};
  for (int t = 0; t < 100; ++t) {
    auto pick = weighted_sample(w, 4, rng);
    REQUIRE(pick.size() == 4);
    // both positive weights come first, then zeros uniformly
    CHECK(((pick[0] == 1 && pick[1] == 3) || (pick[0] == 3 && pick[1] == 1)));
    std::sort(pick.begin(), pick.end());
    CHECK(std::adjacent_find(pick.begin(), pick.end()) == pick.end());
  }
  CHECK(weighted_sample(w, 9, rng).size() == 5);
}

TEST_CASE("weighted pick returns every candidate when there are few") {
  const Embedding emb = random_embedding(5, 4, 1);
  Rng rng = make_rng(1);
  const std::vector<NodeId> cand{1, 2};
  CHECK(weighted_pick(0, cand, 2, {0.0, 1.0}, emb, rng) == cand);
  CHECK(weighted_pick(0, cand, 1, {0.0, 1.0}, emb, rng).size() == 1);
}

TEST_CASE("enhanced k-DA stays k-degree anonymous") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = erdos_renyi(60, 0.08, seed);
    const Embedding emb = random_embedding(60, 8, seed);
    const PlausibilityPrior prior{0.3, 0.2};
    for (std::size_t k : {2, 5, 10}) {
      const KdaResult r = enhanced_kda(g, {k, seed}, prior, emb);
      CHECK(test::k_anonymous_oracle(r.graph, k));
      CHECK(r.targets == kda_anonymize(g, {k, seed}).targets);
    }
  }
  const Graph g = erdos_renyi(20, 0.2, 1);
  CHECK_THROWS(enhanced_kda(g, {2, 1}, {0.0, 1.0}, random_embedding(20, 4, 1), Metric::jaccard));
  CHECK_THROWS(enhanced_kda(g, {2, 1}, {0.0, 1.0}, random_embedding(10, 4, 1)));
}

TEST_CASE("enhanced SalaDP shares the noised target with the standard mechanism") {
  const Graph g = erdos_renyi(120, 0.06, 3);
  const Embedding emb = random_embedding(120, 8, 3);
  const SaladpResult plain = saladp_anonymize(g, {10.0, 4});
  const SaladpResult enhanced = enhanced_saladp(g, {10.0, 4}, {0.2, 0.3}, emb);
  CHECK(plain.target == enhanced.target);
  CHECK(enhanced.graph.node_count() == g.node_count());
}
