#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphrec/graph.hpp"
#include "graphrec/rng.hpp"

namespace graphrec {

struct WalkConfig {
  std::size_t walk_length = 100;  ///< steps per walk (l)
  std::size_t walk_times = 80;    ///< walks started per node (t)
  std::uint64_t seed = 1;
  std::size_t threads = 1;  ///< 0 = hardware concurrency
};

/// Random-walk traces stored back to back.
class WalkCorpus {
 public:
  WalkCorpus() = default;
  WalkCorpus(std::vector<NodeId> tokens, std::vector<std::size_t> offsets);

  [[nodiscard]] std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::size_t token_count() const noexcept { return tokens_.size(); }
  [[nodiscard]] std::span<const NodeId> trace(std::size_t i) const {
    return {tokens_.data() + offsets_[i], tokens_.data() + offsets_[i + 1]};
  }
  [[nodiscard]] std::span<const NodeId> tokens() const noexcept { return tokens_; }

  friend bool operator==(const WalkCorpus&, const WalkCorpus&) = default;

 private:
  std::vector<NodeId> tokens_;
  std::vector<std::size_t> offsets_;
};

/// One truncated walk of `length` uniform-neighbor steps from `start`. A
/// start without neighbors yields the singleton trace.
std::vector<NodeId> random_walk(const Graph& g, NodeId start, std::size_t length, Rng& rng);

/// walk_times rounds; each round visits every node of degree >= 1 in a
/// seeded shuffled order and walks from it. Walk (node, round) draws from its
/// own stream derived from (seed, node, round), so the corpus does not depend
/// on the thread count. Isolated nodes start no walks.
WalkCorpus generate_walks(const Graph& g, const WalkConfig& cfg);

/// Calls fn(center, context) for every ordered pair of positions within
/// `window` of each other in the same trace.
template <class Fn>
void for_each_neighborhood_pair(const WalkCorpus& corpus, std::size_t window, Fn&& fn) {
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    auto trace = corpus.trace(t);
    const std::size_t len = trace.size();
    for (std::size_t p = 0; p < len; ++p) {
      const std::size_t lo = p > window ? p - window : 0;
      const std::size_t hi = std::min(len - 1, p + window);
      for (std::size_t q = lo; q <= hi; ++q) {
        if (q != p) fn(trace[p], trace[q]);
      }
    }
  }
}

/// Number of pairs for_each_neighborhood_pair emits for one trace length.
std::size_t neighborhood_pair_count(std::size_t trace_length, std::size_t window);
std::size_t neighborhood_pair_count(const WalkCorpus& corpus, std::size_t window);

struct TrainConfig {
  std::size_t dimension = 128;
  std::size_t window = 10;  ///< context radius in a trace
  std::size_t negative_samples = 5;
  double initial_lr = 0.025;
  double final_lr = 2.5e-4;
  std::size_t epochs = 1;
  std::uint64_t seed = 1;
  std::size_t workers = 1;  ///< >1 trains lock-free in parallel (nondeterministic)
  bool track_loss = false;
};

/// Per-node real vectors, row-major.
class Embedding {
 public:
  Embedding() = default;
  Embedding(std::size_t rows, std::size_t dimension) : rows_(rows), dim_(dimension), data_(rows * dimension, 0.0F) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }
  [[nodiscard]] std::span<const float> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  [[nodiscard]] std::span<float> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  [[nodiscard]] std::span<const float> data() const noexcept { return data_; }
  [[nodiscard]] std::span<float> data() noexcept { return data_; }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> data_;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainStats {
  std::size_t pairs = 0;
  /// Mean negative-sampling loss over each quarter of the pair stream
  /// (filled only when track_loss is set).
  std::vector<double> quarter_loss;
};

/// Skip-gram with negative sampling over the corpus neighborhoods. Returns
/// the center-vector table for `node_count` nodes; nodes absent from the
/// corpus keep their random initialization.
Embedding train_skipgram(const WalkCorpus& corpus, std::size_t node_count, const TrainConfig& cfg,
                         TrainStats* stats = nullptr);

enum class EmbeddingFormat { text, binary };

void save_embedding(const std::filesystem::path& path, const Embedding& emb, EmbeddingFormat format);
/// Detects the format from the first bytes.
Embedding load_embedding(const std::filesystem::path& path);

}  // namespace graphrec
