#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <sstream>

#include "graphrec/metrics.hpp"
#include "graphrec/synthetic.hpp"

using namespace graphrec;

TEST_CASE("AUC on hand-made rankings") {
  // fakes have the lowest plausibility: perfect separation
  CHECK(auc_rank_statistic(std::vector<double>{0.1, 0.2, 0.8, 0.9}, {true, true, false, false}) == 1.0);
  CHECK(auc_rank_statistic(std::vector<double>{0.8, 0.9, 0.1, 0.2}, {true, true, false, false}) == 0.0);
  CHECK(auc_rank_statistic(std::vector<double>{0.5, 0.5, 0.5, 0.5}, {true, false, true, false}) == 0.5);
  // one of four fake/original pairs inverted
  CHECK(auc_rank_statistic(std::vector<double>{0.1, 0.6, 0.5, 0.9}, {true, true, false, false}) == 0.75);
  CHECK_THROWS_AS(roc_curve(std::vector<double>{0.1, 0.2}, {true, true}), std::invalid_argument);
}

TEST_CASE("ROC curve runs from the origin to (1,1)") {
  const RocResult r = roc_curve(std::vector<double>{0.1, 0.6, 0.5, 0.9}, {true, true, false, false});
  REQUIRE(r.points.size() >= 2);
  CHECK(r.points.front().fpr == 0.0);
  CHECK(r.points.front().tpr == 0.0);
  CHECK(r.points.back().fpr == 1.0);
  CHECK(r.points.back().tpr == 1.0);
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    CHECK(r.points[i].fpr >= r.points[i - 1].fpr);
    CHECK(r.points[i].tpr >= r.points[i - 1].tpr);
  }
  std::ostringstream out;
  write_roc_csv(out, r);
  CHECK(out.str().rfind("fpr,tpr\n", 0) == 0);
}

TEST_CASE("rank statistic equals the trapezoid integral on 1000 random score sets") {
  std::mt19937_64 gen(2024);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + gen() % 200;
    // coarse values force ties
    std::uniform_int_distribution<int> val(0, t % 2 == 0 ? 10 : 100000);
    std::vector<double> s(n);
    std::vector<bool> lab(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = val(gen) / 10.0;
      lab[i] = (gen() & 1U) != 0;
    }
    lab[0] = true;
    lab[1] = false;
    const RocResult r = roc_curve(s, lab);
    CHECK(std::abs(trapezoid_area(r.points) - auc_rank_statistic(s, lab)) < 1e-9);
    CHECK(std::abs(r.auc - auc_rank_statistic(s, lab)) < 1e-9);
  }
}

TEST_CASE("AUC is invariant under monotone transforms") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> s(100), e(100);
    std::vector<bool> lab(100);
    for (std::size_t i = 0; i < 100; ++i) {
      lab[i] = i % 3 == 0;
      s[i] = nd(gen) + (lab[i] ? -0.5 : 0.5);
      e[i] = std::exp(3.0 * s[i]) + 7.0;
    }
    CHECK(auc_rank_statistic(e, lab) == doctest::Approx(auc_rank_statistic(s, lab)));
  }
}

TEST_CASE("precision and recall") {
  EdgeDiff truth;
  truth.added = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  const std::vector<Edge> pred{{0, 1}, {0, 2}, {4, 5}};
  const auto pr = precision_recall(pred, truth);
  CHECK(pr.precision == doctest::Approx(2.0 / 3.0));
  CHECK(pr.recall == doctest::Approx(0.5));
  CHECK_THROWS(precision_recall(std::vector<Edge>{}, truth));
  CHECK_THROWS(precision_recall(pred, EdgeDiff{}));
}

TEST_CASE("degree difference behaves like a distance") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph a = erdos_renyi(30, 0.1, seed);
    const Graph b = erdos_renyi(30, 0.15, seed + 50);
    const Graph c = erdos_renyi(30, 0.2, seed + 90);
    CHECK(degree_difference(a, a) == 0.0);
    CHECK(degree_difference(a, b) == degree_difference(b, a));
    CHECK(degree_difference(a, c) <= degree_difference(a, b) + degree_difference(b, c) + 1e-12);
  }
  const Graph path(3, {{0, 1}, {1, 2}});
  const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(degree_difference(path, k3) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS(degree_difference(path, Graph(4, {{0, 1}})));
}

TEST_CASE("dK-2 noise statistics by hand") {
  // every graph below has all its edges in cell (2,2)
  const Graph g(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});                  // 6 edges
  const Graph seven(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 0}});      // 7 edges
  const Graph five(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});                       // 5 edges
  const std::vector<Graph> samples{seven, seven, five, five};
  const NoiseStats ns = dk2_noise_stats(g, samples);
  CHECK(ns.zeta == doctest::Approx(1.0));
  CHECK(ns.entropy == doctest::Approx(1.0));
  const NoiseStats none = dk2_noise_stats(g, std::vector<Graph>{g, g});
  CHECK(none.zeta == 0.0);
  CHECK(none.entropy == 0.0);
}

TEST_CASE("dK-2 noise statistics average over the original graph's cells only") {
  const Graph g(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  // g plus a pendant edge: cell (2,2) keeps 6 edges, (1,3) is new
  const Graph extra(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {5, 6}});
  const NoiseStats ns = dk2_noise_stats(g, std::vector<Graph>{extra, extra});
  // (2,2) now has 4 edges and (2,3) 2: cell (2,2) moves by -2 in both samples
  CHECK(ns.zeta == doctest::Approx(2.0));
  CHECK(ns.entropy == 0.0);
}

TEST_CASE("utility vectors on small graphs") {
  const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(triangle_counts(k3) == std::vector<double>{1, 1, 1});
  const auto ev = eigencentrality(k3);
  for (double x : ev) CHECK(x == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(degree_distribution(k3) == std::vector<double>{0, 0, 1});

  const Graph path(3, {{0, 1}, {1, 2}});
  CHECK(triangle_counts(path) == std::vector<double>{0, 0, 0});
  const auto pe = eigencentrality(path);
  CHECK(pe[1] == doctest::Approx(std::sqrt(0.5)));
  CHECK(pe[0] == doctest::Approx(0.5));
  CHECK(degree_distribution(path) == std::vector<double>{0, 2.0 / 3.0, 1.0 / 3.0});
}

TEST_CASE("regular graphs have uniform eigencentrality") {
  // cycle of 12 plus chords i, i+6: 3-regular
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 12; ++i) edges.emplace_back(i, (i + 1) % 12);
  for (NodeId i = 0; i < 6; ++i) edges.emplace_back(i, i + 6);
  const auto ev = eigencentrality(Graph(12, edges));
  for (double x : ev) CHECK(x == doctest::Approx(1.0 / std::sqrt(12.0)));
}

TEST_CASE("eigencentrality matches a dense eigen-decomposition") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 5 + seed % 26;
    const Graph g = erdos_renyi(n, 0.3, seed);
    if (g.edge_count() == 0) continue;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const Edge& e : g.edges()) {
      a(e.u, e.v) = 1.0;
      a(e.v, e.u) = 1.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    const Eigen::Index top = static_cast<Eigen::Index>(n) - 1;
    // skip graphs whose top eigenvalue is not simple
    if (solver.eigenvalues()(top) - solver.eigenvalues()(top - 1) < 1e-6) continue;
    Eigen::VectorXd v = solver.eigenvectors().col(top);
    if (v.sum() < 0) v = -v;
    const auto ev = eigencentrality(g);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ev[i] - v(static_cast<Eigen::Index>(i))) < 1e-6);
  }
}

TEST_CASE("triangle counts match triple enumeration") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t n = 4 + seed % 27;
    const Graph g = erdos_renyi(n, 0.25, seed);
    std::vector<double> oracle(n, 0.0);
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b)
        for (NodeId c = b + 1; c < n; ++c)
          if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
            oracle[a] += 1;
            oracle[b] += 1;
            oracle[c] += 1;
          }
    CHECK(triangle_counts(g) == oracle);
  }
}

TEST_CASE("utility similarity") {
  const Graph g = erdos_renyi(40, 0.2, 1);
  const auto v = utility_vectors(g);
  const auto self = utility_similarity(v, v);
  CHECK(self.degree_distribution == doctest::Approx(1.0));
  CHECK(self.eigencentrality == doctest::Approx(1.0));
  CHECK(self.triangle_count == doctest::Approx(1.0));
  CHECK(vector_cosine(std::vector<double>{1, 0}, std::vector<double>{1, 0, 0}) == doctest::Approx(1.0));
  CHECK(vector_cosine(std::vector<double>{1, 0}, std::vector<double>{0, 0, 2}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(vector_cosine(std::vector<double>{0, 0}, std::vector<double>{1}), MetricError);
  CHECK_THROWS(utility_similarity(v, utility_vectors(erdos_renyi(41, 0.2, 1))));
}
