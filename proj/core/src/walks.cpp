#include <algorithm>
#include <numeric>
#include <thread>

#include "graphrec/embed.hpp"
#include "graphrec/parallel.hpp"

namespace graphrec {

WalkCorpus::WalkCorpus(std::vector<NodeId> tokens, std::vector<std::size_t> offsets)
    : tokens_(std::move(tokens)), offsets_(std::move(offsets)) {
  if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != tokens_.size() ||
      !std::is_sorted(offsets_.begin(), offsets_.end())) {
    throw std::invalid_argument("walk corpus offsets do not delimit the token array");
  }
}

std::vector<NodeId> random_walk(const Graph& g, NodeId start, std::size_t length, Rng& rng) {
  std::vector<NodeId> trace;
  trace.reserve(length + 1);
  trace.push_back(start);
  NodeId cur = start;
  for (std::size_t step = 0; step < length; ++step) {
    auto nbrs = g.neighbors(cur);
    if (nbrs.empty()) break;
    cur = nbrs[uniform_index(rng, nbrs.size())];
    trace.push_back(cur);
  }
  return trace;
}

WalkCorpus generate_walks(const Graph& g, const WalkConfig& cfg) {
  if (cfg.walk_length < 1 || cfg.walk_times < 1) {
    throw std::invalid_argument("walk length and walk times must be at least 1");
  }
  std::vector<NodeId> starts;
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    if (g.degree(static_cast<NodeId>(u)) > 0) starts.push_back(static_cast<NodeId>(u));
  }

  // Every walk from a node with neighbors takes exactly walk_length steps.
  const std::size_t stride = cfg.walk_length + 1;
  const std::size_t walks = starts.size() * cfg.walk_times;
  std::vector<NodeId> tokens(walks * stride);
  std::vector<std::size_t> offsets(walks + 1);
  for (std::size_t i = 0; i <= walks; ++i) offsets[i] = i * stride;

  std::vector<std::vector<NodeId>> round_order(cfg.walk_times, starts);
  for (std::size_t r = 0; r < cfg.walk_times; ++r) {
    Rng shuffle_rng = make_rng(cfg.seed, 0x77616c6b, r);
    std::shuffle(round_order[r].begin(), round_order[r].end(), shuffle_rng);
  }

  parallel_for(walks, resolve_threads(cfg.threads), [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      const std::size_t round = w / starts.size();
      const NodeId start = round_order[round][w % starts.size()];
      Rng rng = make_rng(cfg.seed, start, round);
      NodeId* out = tokens.data() + w * stride;
      NodeId cur = start;
      out[0] = cur;
      for (std::size_t step = 1; step < stride; ++step) {
        auto nbrs = g.neighbors(cur);
        cur = nbrs[uniform_index(rng, nbrs.size())];
        out[step] = cur;
      }
    }
  });
  return WalkCorpus(std::move(tokens), std::move(offsets));
}

std::size_t neighborhood_pair_count(std::size_t trace_length, std::size_t window) {
  std::size_t total = 0;
  for (std::size_t p = 0; p < trace_length; ++p) {
    const std::size_t left = std::min(p, window);
    const std::size_t right = std::min(trace_length - 1 - p, window);
    total += left + right;
  }
  return total;
}

std::size_t neighborhood_pair_count(const WalkCorpus& corpus, std::size_t window) {
  std::size_t total = 0;
  for (std::size_t t = 0; t < corpus.size(); ++t) total += neighborhood_pair_count(corpus.trace(t).size(), window);
  return total;
}

}  // namespace graphrec
