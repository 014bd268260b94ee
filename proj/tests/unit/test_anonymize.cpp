#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphrec/anonymize.hpp"
#include "graphrec/synthetic.hpp"
#include "helpers.hpp"

using namespace graphrec;

namespace {

std::vector<std::size_t> sorted_desc(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::size_t seq_cost(const std::vector<std::size_t>& degrees, const std::vector<std::size_t>& targets) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i) c += targets[i] - degrees[i];
  return c;
}

}  // namespace

TEST_CASE("k-anonymous degree sequence: hand examples") {
  CHECK(kda_degree_sequence(std::vector<std::size_t>{3, 3, 3}, 3) == std::vector<std::size_t>{3, 3, 3});
  CHECK(kda_degree_sequence(std::vector<std::size_t>{4, 3, 2, 1}, 2) == std::vector<std::size_t>{4, 4, 2, 2});
  CHECK(kda_sequence(std::vector<std::size_t>{4, 3, 2, 1}, 2).cost == 2);
}

TEST_CASE("k-anonymous degree sequence: three nodes with k = 2 form one group") {
  // (5, 5, 2) would leave degree 2 alone; the only valid split is one run of 3
  const std::vector<std::size_t> degrees{5, 2, 2};
  const auto seq = kda_sequence(degrees, 2);
  CHECK(seq.targets == std::vector<std::size_t>{5, 5, 5});
  CHECK(seq.cost == 6);
  CHECK(seq.cost == test::exhaustive_kda_cost(sorted_desc(degrees), 2));
}

TEST_CASE("k-anonymous degree sequence rejects bad k") {
  const std::vector<std::size_t> degrees{1, 1, 1};
  CHECK_THROWS_AS(kda_sequence(degrees, 4), std::invalid_argument);
  CHECK_THROWS_AS(kda_sequence(degrees, 1), std::invalid_argument);
}

TEST_CASE("k-anonymous degree sequence equals the exhaustive oracle on every sequence up to 8 nodes") {
  for (std::size_t n = 2; n <= 8; ++n) {
    // every non-increasing sequence with values in [0, n-1]
    std::vector<std::size_t> seq(n, n - 1);
    while (true) {
      for (std::size_t k = 2; k <= std::min<std::size_t>(3, n); ++k) {
        const auto r = kda_sequence(seq, k);
        REQUIRE(r.cost == test::exhaustive_kda_cost(seq, k));
      }
      std::size_t i = n;
      while (i > 0 && seq[i - 1] == 0) --i;
      if (i == 0) break;
      --seq[i - 1];
      for (std::size_t j = i; j < n; ++j) seq[j] = seq[i - 1];
    }
  }
}

TEST_CASE("k-anonymous degree sequence properties on random graphs") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const Graph g = erdos_renyi(n, 0.1 + 0.1 * static_cast<double>(seed % 7), seed);
    const auto degrees = g.degrees();
    for (std::size_t k = 2; k <= std::min<std::size_t>(3, n); ++k) {
      const auto r = kda_sequence(degrees, k);
      CHECK(r.cost == test::exhaustive_kda_cost(sorted_desc(degrees), k));
      CHECK(r.cost == seq_cost(degrees, r.targets));
      std::map<std::size_t, std::size_t> mult;
      for (std::size_t u = 0; u < n; ++u) {
        CHECK(r.targets[u] >= degrees[u]);
        ++mult[r.targets[u]];
      }
      for (const auto& [v, c] : mult) CHECK(c >= k);
      // order preserved: descending degrees map to descending targets
      for (std::size_t i = 1; i < n; ++i) CHECK(r.targets[r.order[i - 1]] >= r.targets[r.order[i]]);
    }
  }
}

TEST_CASE("parity fix keeps k-anonymity") {
  // degrees 3,3,1,1,1 with k=2 -> groups {3,3} and {1,1,1}: sum 9 is odd
  std::vector<std::size_t> degrees{3, 3, 1, 1, 1};
  auto seq = kda_sequence(degrees, 2);
  CHECK(std::accumulate(seq.targets.begin(), seq.targets.end(), std::size_t{0}) % 2 == 1);
  CHECK(make_degree_sum_even(seq, degrees.size()));
  CHECK(std::accumulate(seq.targets.begin(), seq.targets.end(), std::size_t{0}) % 2 == 0);
  std::map<std::size_t, std::size_t> mult;
  for (std::size_t t : seq.targets) ++mult[t];
  for (const auto& [v, c] : mult) CHECK(c >= 2);
  CHECK_FALSE(make_degree_sum_even(seq, degrees.size()));
}

TEST_CASE("k-DA leaves an already anonymous graph alone") {
  const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const KdaResult r = kda_anonymize(k4, {4, 1});
  CHECK(r.graph == k4);
  CHECK(r.edges_added == 0);
  CHECK(r.edges_deleted == 0);
}

TEST_CASE("k-DA output is k-degree anonymous on random graphs") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Graph g = erdos_renyi(40 + seed % 30, 0.1, seed);
    for (std::size_t k : {2, 5, 10}) {
      const KdaResult r = kda_anonymize(g, {k, seed});
      CHECK(r.graph.node_count() == g.node_count());
      CHECK(test::k_anonymous_oracle(r.graph, k));
      const EdgeDiff diff = edge_diff(g, r.graph);
      CHECK(diff.deleted.size() <= r.edges_deleted);
    }
  }
}

TEST_CASE("relaxation is not undone by the freed pair") {
  // the last two unmet nodes are adjacent, so the relaxation must hand the
  // freed endpoints to them rather than letting the freed pair relink
  const Graph g = erdos_renyi(41, 0.1, 91);
  const KdaResult r = kda_anonymize(g, {5, 91});
  CHECK(test::k_anonymous_oracle(r.graph, 5));
  CHECK(r.edges_deleted < 20);
}

TEST_CASE("k-DA is deterministic under a seed") {
  const Graph g = social_graph({.nodes = 400, .communities = 4, .min_circle = 10, .max_circle = 40}, 3);
  CHECK(kda_anonymize(g, {10, 5}).graph == kda_anonymize(g, {10, 5}).graph);
}

TEST_CASE("degree realization fails cleanly when targets cannot be met") {
  Rng rng = make_rng(1);
  const Graph two(2, {});
  CHECK_THROWS_AS(realize_degree_targets(two, std::vector<std::size_t>{1, 0}, rng), RealizationError);
  CHECK_THROWS_AS(realize_degree_targets(two, std::vector<std::size_t>{2, 2}, rng), std::invalid_argument);
}

TEST_CASE("partner chooser is called with eligible candidates only") {
  const Graph g = erdos_renyi(40, 0.1, 9);
  std::size_t calls = 0;
  PartnerChooser chooser = [&](NodeId u, std::span<const NodeId> cand, std::size_t m, Rng&) {
    ++calls;
    for (NodeId v : cand) CHECK(v != u);
    std::vector<NodeId> out(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(std::min(m, cand.size())));
    return out;
  };
  const KdaResult r = kda_anonymize(g, {5, 1}, chooser);
  CHECK(calls > 0);
  CHECK(test::k_anonymous_oracle(r.graph, 5));
}

TEST_CASE("Laplace noise magnitude matches its scale") {
  Rng rng = make_rng(42);
  for (double scale : {0.5, 4.0, 41.0}) {
    double sum = 0.0, signed_sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double x = laplace(rng, scale);
      sum += std::abs(x);
      signed_sum += x;
    }
    CHECK(sum / 20000.0 == doctest::Approx(scale).epsilon(0.05));
    CHECK(std::abs(signed_sum / 20000.0) < 0.05 * scale);
  }
  CHECK(laplace(rng, 0.0) == 0.0);
}

TEST_CASE("SalaDP noise") {
  DK2Series s;
  s.cells[{2, 2}] = 100;
  s.cells[{1, 3}] = 7;
  SUBCASE("seeded and reproducible") {
    CHECK(saladp_noise_dk2(s, 10.0, 5) == saladp_noise_dk2(s, 10.0, 5));
    CHECK_FALSE(saladp_noise_dk2(s, 10.0, 5) == saladp_noise_dk2(s, 10.0, 6));
  }
  SUBCASE("vanishing scale keeps the counts") { CHECK(saladp_noise_dk2(s, 1e12, 5) == s); }
  SUBCASE("counts stay nonnegative and keys are kept") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const DK2Series n = saladp_noise_dk2(s, 0.1, seed);
      CHECK(n.cells.size() == 2);
      for (const auto& [cell, count] : n.cells) CHECK(count >= 0);
    }
  }
  SUBCASE("mean absolute noise over 1000 seeds is the Laplace scale") {
    DK2Series big;
    big.cells[{3, 3}] = 100000;
    const double scale = dk2_cell_sensitivity({3, 3}) / 10.0;
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      sum += std::abs(static_cast<double>(saladp_noise_dk2(big, 10.0, seed).at({3, 3}) - 100000));
    }
    // rounding to integers adds at most 0.25 on average at this scale
    CHECK(std::abs(sum / 1000.0 - scale) < 0.1 * scale + 0.25);
  }
  CHECK_THROWS(saladp_noise_dk2(s, 0.0, 1));
}

TEST_CASE("SalaDP with a huge budget barely changes the graph") {
  const Graph g = erdos_renyi(200, 0.05, 4);
  const SaladpResult r = saladp_anonymize(g, {1e6, 1});
  CHECK(edge_jaccard(g, r.graph) >= 0.95);
}

TEST_CASE("SalaDP realization moves each cell toward its target") {
  const Graph g = social_graph({.nodes = 600, .communities = 4, .min_circle = 10, .max_circle = 40}, 2);
  const SaladpResult r = saladp_anonymize(g, {10.0, 3});
  CHECK(r.graph.node_count() == g.node_count());
  // recount edges by original degree class
  const auto deg = g.degrees();
  std::map<DegreePair, std::int64_t> realized;
  for (const Edge& e : r.graph.edges()) ++realized[DegreePair(deg[e.u], deg[e.v])];
  std::int64_t unmet_add = 0, unmet_del = 0;
  for (const auto& [cell, want] : r.target.cells) {
    const std::int64_t have = realized.count(cell) ? realized[cell] : 0;
    if (have < want) unmet_add += want - have;
    if (have > want) unmet_del += have - want;
  }
  CHECK(unmet_add == r.unmet_additions);
  CHECK(unmet_del == r.unmet_deletions);
  CHECK(r.edges_added == edge_diff(g, r.graph).added.size());
  CHECK(r.edges_deleted == edge_diff(g, r.graph).deleted.size());
}

TEST_CASE("SalaDP is deterministic under a seed") {
  const Graph g = erdos_renyi(150, 0.06, 8);
  CHECK(saladp_anonymize(g, {10.0, 2}).graph == saladp_anonymize(g, {10.0, 2}).graph);
}
