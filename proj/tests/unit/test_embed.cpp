#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>

#include "graphrec/embed.hpp"
#include "graphrec/plausibility.hpp"
#include "graphrec/synthetic.hpp"
#include "helpers.hpp"

using namespace graphrec;

TEST_CASE("walks on a single edge alternate") {
  const Graph k2(2, {{0, 1}});
  Rng rng = make_rng(3);
  CHECK(random_walk(k2, 0, 4, rng) == std::vector<NodeId>{0, 1, 0, 1, 0});
}

TEST_CASE("a node without neighbors gives a singleton trace and starts no corpus walks") {
  const Graph g(3, {{0, 1}});
  Rng rng = make_rng(1);
  CHECK(random_walk(g, 2, 10, rng) == std::vector<NodeId>{2});
  const WalkCorpus corpus = generate_walks(g, {10, 4, 1, 1});
  CHECK(corpus.size() == 8);
  for (NodeId t : corpus.tokens()) CHECK(t != 2);
}

TEST_CASE("first steps from a star center are uniform over the leaves") {
  const std::size_t leaves = 8;
  std::vector<Edge> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  const Graph star(leaves + 1, edges);
  Rng rng = make_rng(11);
  std::vector<double> counts(leaves + 1, 0.0);
  const int draws = 16000;
  for (int i = 0; i < draws; ++i) counts[random_walk(star, 0, 2, rng)[1]] += 1.0;
  CHECK(counts[0] == 0.0);
  const double expected = draws / static_cast<double>(leaves);
  double chi2 = 0.0;
  for (std::size_t i = 1; i <= leaves; ++i) chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
  // 7 degrees of freedom, 99.9th percentile is 24.3
  CHECK(chi2 < 24.3);
}

TEST_CASE("transitions from a four-leaf star center are uniform") {
  const Graph s4(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  Rng rng = make_rng(12);
  std::vector<double> counts(5, 0.0);
  const int steps = 100000;
  for (int i = 0; i < steps; ++i) counts[random_walk(s4, 0, 1, rng)[1]] += 1.0;
  for (std::size_t leaf = 1; leaf <= 4; ++leaf) CHECK(counts[leaf] / steps == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("walk traces follow edges and have the requested shape") {
  const Graph g = erdos_renyi(60, 0.08, 2);
  const WalkConfig cfg{15, 3, 9, 1};
  const WalkCorpus corpus = generate_walks(g, cfg);
  std::size_t active = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) active += g.degree(u) > 0 ? 1 : 0;
  CHECK(corpus.size() == active * cfg.walk_times);
  std::map<NodeId, std::size_t> starts;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto t = corpus.trace(i);
    CHECK(t.size() == cfg.walk_length + 1);
    ++starts[t[0]];
    for (std::size_t p = 1; p < t.size(); ++p) CHECK(g.has_edge(t[p - 1], t[p]));
  }
  for (const auto& [u, c] : starts) CHECK(c == cfg.walk_times);
}

TEST_CASE("walk corpus does not depend on the thread count") {
  const Graph g = erdos_renyi(80, 0.05, 5);
  CHECK(generate_walks(g, {20, 3, 4, 1}) == generate_walks(g, {20, 3, 4, 4}));
  CHECK_FALSE(generate_walks(g, {20, 3, 4, 1}) == generate_walks(g, {20, 3, 5, 1}));
}

TEST_CASE("neighborhood pair counts") {
  // length 5, window 2: positions contribute 2,3,4,3,2
  CHECK(neighborhood_pair_count(5, 2) == 14);
  CHECK(neighborhood_pair_count(1, 10) == 0);
  CHECK(neighborhood_pair_count(4, 10) == 12);
  const WalkCorpus abc({0, 1, 2}, {0, 3});
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for_each_neighborhood_pair(abc, 1, [&](NodeId a, NodeId b) { pairs.emplace_back(a, b); });
  CHECK(pairs == std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});
  CHECK(neighborhood_pair_count(abc, 10) == 6);
  // closed form against enumeration
  for (std::size_t len = 1; len <= 40; ++len) {
    for (std::size_t w = 1; w <= 12; ++w) {
      std::size_t brute = 0;
      for (std::size_t p = 0; p < len; ++p)
        for (std::size_t q = 0; q < len; ++q) brute += (q != p && (p > q ? p - q : q - p) <= w) ? 1 : 0;
      CHECK(neighborhood_pair_count(len, w) == brute);
    }
  }
  const WalkCorpus corpus({0, 1, 2, 3, 4, 5, 6}, {0, 5, 7});
  std::size_t seen = 0;
  for_each_neighborhood_pair(corpus, 2, [&](NodeId a, NodeId b) {
    CHECK(a != b);
    ++seen;
  });
  CHECK(seen == 14 + 2);
  CHECK(neighborhood_pair_count(corpus, 2) == seen);
}

namespace {

double mean_cosine(const Embedding& emb, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  double s = 0.0;
  for (auto [a, b] : pairs) s += cosine(emb.row(a), emb.row(b));
  return s / static_cast<double>(pairs.size());
}

Embedding embed(const Graph& g, std::uint64_t seed, std::size_t dim = 32) {
  const WalkCorpus corpus = generate_walks(g, {40, 10, seed, 1});
  TrainConfig tc;
  tc.dimension = dim;
  tc.window = 5;
  tc.seed = seed;
  return train_skipgram(corpus, g.node_count(), tc);
}

}  // namespace

TEST_CASE("embedding separates two cliques") {
  for (bool bridge : {false, true}) {
    const std::size_t size = 10;
    const Graph g = test::clique_pair(size, bridge);
    const Embedding emb = embed(g, 7);
    std::vector<std::pair<NodeId, NodeId>> within, across;
    for (NodeId a = 0; a < size; ++a) {
      for (NodeId b = a + 1; b < size; ++b) within.emplace_back(a, b);
      for (NodeId b = size; b < 2 * size; ++b) across.emplace_back(a, b);
    }
    CHECK(mean_cosine(emb, within) > mean_cosine(emb, across) + 0.2);
  }
}

TEST_CASE("training loss decreases over the pair stream") {
  const Graph g = social_graph({.nodes = 300, .communities = 3, .min_circle = 10, .max_circle = 30}, 4);
  const WalkCorpus corpus = generate_walks(g, {30, 5, 1, 1});
  TrainConfig tc;
  tc.dimension = 32;
  tc.track_loss = true;
  TrainStats stats;
  train_skipgram(corpus, g.node_count(), tc, &stats);
  CHECK(stats.pairs == neighborhood_pair_count(corpus, tc.window));
  REQUIRE(stats.quarter_loss.size() == 4);
  CHECK(stats.quarter_loss[3] < stats.quarter_loss[0]);
}

TEST_CASE("single-worker training is deterministic") {
  const Graph g = erdos_renyi(50, 0.1, 3);
  CHECK(embed(g, 2) == embed(g, 2));
  CHECK_FALSE(embed(g, 2) == embed(g, 3));
}

TEST_CASE("training rejects a zero dimension") {
  const WalkCorpus corpus({0, 1}, {0, 2});
  TrainConfig tc;
  tc.dimension = 0;
  CHECK_THROWS(train_skipgram(corpus, 2, tc));
}

TEST_CASE("embedding files round-trip in both formats") {
  const Embedding emb = embed(erdos_renyi(20, 0.2, 1), 1, 8);
  const auto dir = std::filesystem::temp_directory_path() / "graphrec-embed-test";
  std::filesystem::create_directories(dir);
  save_embedding(dir / "e.bin", emb, EmbeddingFormat::binary);
  CHECK(load_embedding(dir / "e.bin") == emb);
  save_embedding(dir / "e.txt", emb, EmbeddingFormat::text);
  const Embedding text = load_embedding(dir / "e.txt");
  REQUIRE(text.rows() == emb.rows());
  REQUIRE(text.dimension() == emb.dimension());
  for (std::size_t i = 0; i < emb.data().size(); ++i) CHECK(text.data()[i] == doctest::Approx(emb.data()[i]).epsilon(1e-6));
  std::filesystem::remove_all(dir);
}
