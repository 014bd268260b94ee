#include <benchmark/benchmark.h>

#include <random>

#include "graphrec/anonymize.hpp"
#include "graphrec/embed.hpp"
#include "graphrec/metrics.hpp"
#include "graphrec/synthetic.hpp"

using namespace graphrec;

namespace {

const Graph& social() {
  static const Graph g = social_graph({.nodes = 1000, .communities = 5, .min_circle = 20, .max_circle = 80}, 1);
  return g;
}

void BM_Walks(benchmark::State& state) {
  const WalkConfig cfg{100, 2, 1, 1};
  std::size_t tokens = 0;
  for (auto _ : state) {
    auto corpus = generate_walks(social(), cfg);
    tokens += corpus.token_count();
    benchmark::DoNotOptimize(corpus);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(tokens));
}
BENCHMARK(BM_Walks)->Unit(benchmark::kMillisecond);

void BM_SkipGram(benchmark::State& state) {
  const WalkCorpus corpus = generate_walks(social(), {40, 1, 1, 1});
  TrainConfig tc;
  tc.dimension = static_cast<std::size_t>(state.range(0));
  std::size_t pairs = 0;
  for (auto _ : state) {
    TrainStats stats;
    auto emb = train_skipgram(corpus, social().node_count(), tc, &stats);
    pairs += stats.pairs;
    benchmark::DoNotOptimize(emb);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(pairs));
}
BENCHMARK(BM_SkipGram)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Kda(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kda_anonymize(social(), {k, 1}));
}
BENCHMARK(BM_Kda)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Auc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  std::vector<double> s(n);
  std::vector<bool> lab(n);
  for (std::size_t i = 0; i < n; ++i) {
    lab[i] = i % 4 == 0;
    s[i] = nd(gen) + (lab[i] ? -1.0 : 0.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(auc_rank_statistic(s, lab));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_Auc)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
