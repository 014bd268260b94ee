#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "graphrec/plausibility.hpp"
#include "graphrec/synthetic.hpp"

using namespace graphrec;

TEST_CASE("vector metrics by hand") {
  const std::vector<float> a{1, 0, 0}, b{0, 1, 0}, c{2, 0, 0}, d{1, 2, 2};
  CHECK(cosine(a, b) == doctest::Approx(0.0));
  CHECK(cosine(a, c) == doctest::Approx(1.0));
  CHECK(cosine(a, d) == doctest::Approx(1.0 / 3.0));
  CHECK(euclidean(a, b) == doctest::Approx(std::sqrt(2.0)));
  CHECK(euclidean(d, d) == 0.0);
  // |1-1|+|0-2|+|0-2| over |2|+|2|+|2|
  CHECK(bray_curtis(a, d) == doctest::Approx(4.0 / 6.0));
  const std::vector<float> zero{0, 0, 0};
  CHECK_THROWS_AS(cosine(a, zero), MetricError);
  CHECK_THROWS_AS(bray_curtis(zero, zero), MetricError);
}

TEST_CASE("vector metrics are symmetric and cosine is scale invariant") {
  std::mt19937_64 gen(5);
  std::normal_distribution<float> nd;
  for (int t = 0; t < 200; ++t) {
    std::vector<float> a(16), b(16), s(16);
    for (auto& x : a) x = nd(gen);
    for (auto& x : b) x = nd(gen);
    const float scale = 0.1F + static_cast<float>(t);
    for (std::size_t i = 0; i < 16; ++i) s[i] = a[i] * scale;
    CHECK(cosine(a, b) == doctest::Approx(cosine(b, a)));
    CHECK(euclidean(a, b) == doctest::Approx(euclidean(b, a)));
    CHECK(bray_curtis(a, b) == doctest::Approx(bray_curtis(b, a)));
    CHECK(cosine(s, b) == doctest::Approx(cosine(a, b)).epsilon(1e-5));
    CHECK(std::abs(cosine(a, b)) <= 1.0 + 1e-9);
  }
}

TEST_CASE("structural baselines by hand") {
  // 0 and 1 share neighbors 2 and 3; 2 has degree 3, 3 has degree 2
  const Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}});
  const auto s = structural_baselines(g, {0, 1});
  CHECK(s.embeddedness == 2);
  // N(0)={1,2,3}, N(1)={0,2,3}: union {0,1,2,3}
  CHECK(s.jaccard == doctest::Approx(0.5));
  CHECK(s.adamic_adar == doctest::Approx(1.0 / std::log(3.0) + 1.0 / std::log(2.0)));
  const auto lone = structural_baselines(Graph(3, {{0, 1}}), {1, 2});
  CHECK(lone.embeddedness == 0);
  CHECK(lone.jaccard == 0.0);
}

TEST_CASE("edge scores are sorted, complete and oriented") {
  const Graph g = erdos_renyi(30, 0.2, 1);
  Embedding emb(30, 4);
  std::mt19937_64 gen(2);
  std::normal_distribution<float> nd;
  for (auto& x : emb.data()) x = nd(gen);
  for (Metric m : kAllMetrics) {
    const EdgeScores s = score_edges(g, emb, m);
    CHECK(s.metric == m);
    REQUIRE(s.records.size() == g.edge_count());
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      CHECK(s.records[i].u == edges[i].u);
      CHECK(s.records[i].v == edges[i].v);
      CHECK(s.records[i].score == doctest::Approx(pair_score(g, &emb, m, edges[i].u, edges[i].v)));
    }
    if (m == Metric::euclidean) {
      CHECK(s.records[0].score == doctest::Approx(-euclidean(emb.row(edges[0].u), emb.row(edges[0].v))));
    }
  }
  CHECK_THROWS(score_edges(g, nullptr, Metric::cosine));
  CHECK_NOTHROW(score_edges(g, nullptr, Metric::jaccard));
  CHECK_THROWS_AS(embedding_score(Embedding(3, 4), Metric::cosine, 0, 7), std::out_of_range);
}

TEST_CASE("metric names round-trip") {
  for (Metric m : kAllMetrics) CHECK(parse_metric(metric_name(m)) == m);
  CHECK_THROWS_AS(parse_metric("manhattan"), std::invalid_argument);
  CHECK(uses_embedding(Metric::bray_curtis));
  CHECK_FALSE(uses_embedding(Metric::adamic_adar));
}

TEST_CASE("score CSV round-trips") {
  EdgeScores s;
  s.metric = Metric::bray_curtis;
  s.records = {{0, 1, -0.25}, {1, 4, 0.125}, {2, 3, 1e-7}};
  std::stringstream buf;
  write_scores_csv(buf, s);
  const EdgeScores back = read_scores_csv(buf);
  CHECK(back.metric == s.metric);
  REQUIRE(back.records.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.records[i].u == s.records[i].u);
    CHECK(back.records[i].v == s.records[i].v);
    CHECK(back.records[i].score == s.records[i].score);
  }
}
