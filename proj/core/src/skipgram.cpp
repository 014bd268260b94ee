#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <string>

#include "graphrec/embed.hpp"
#include "graphrec/parallel.hpp"

namespace graphrec {

namespace {

constexpr int kExpTableSize = 1000;
constexpr float kMaxExp = 6.0F;
constexpr std::size_t kLrUpdateInterval = 10000;

class SigmoidTable {
 public:
  SigmoidTable() {
    for (int i = 0; i < kExpTableSize; ++i) {
      const float x = (static_cast<float>(i) / kExpTableSize * 2.0F - 1.0F) * kMaxExp;
      table_[static_cast<std::size_t>(i)] = 1.0F / (1.0F + std::exp(-x));
    }
  }
  // valid for |x| < kMaxExp
  [[nodiscard]] float operator()(float x) const {
    const auto i = static_cast<std::size_t>((x + kMaxExp) * (kExpTableSize / kMaxExp / 2.0F));
    return table_[std::min<std::size_t>(i, kExpTableSize - 1)];
  }

 private:
  std::array<float, kExpTableSize> table_{};
};

/// Unigram^0.75 lookup table for drawing negative samples.
std::vector<NodeId> build_noise_table(const WalkCorpus& corpus, std::size_t node_count) {
  std::vector<double> weight(node_count, 0.0);
  for (NodeId u : corpus.tokens()) weight[u] += 1.0;
  double total = 0.0;
  for (double& w : weight) {
    w = std::pow(w, 0.75);
    total += w;
  }
  const std::size_t size = std::clamp<std::size_t>(100 * node_count, 1'000'000, 100'000'000);
  std::vector<NodeId> table(size);
  std::size_t node = 0;
  while (node + 1 < node_count && weight[node] == 0.0) ++node;
  double cumulative = weight[node] / total;
  for (std::size_t i = 0; i < size; ++i) {
    table[i] = static_cast<NodeId>(node);
    if (static_cast<double>(i) / static_cast<double>(size) > cumulative && node + 1 < node_count) {
      do {
        ++node;
      } while (node + 1 < node_count && weight[node] == 0.0);
      cumulative += weight[node] / total;
    }
  }
  return table;
}

inline float dot(const float* __restrict a, const float* __restrict b, std::size_t d) {
  float s0 = 0.0F, s1 = 0.0F, s2 = 0.0F, s3 = 0.0F, s4 = 0.0F, s5 = 0.0F, s6 = 0.0F, s7 = 0.0F;
  std::size_t i = 0;
  for (; i + 8 <= d; i += 8) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
    s4 += a[i + 4] * b[i + 4];
    s5 += a[i + 5] * b[i + 5];
    s6 += a[i + 6] * b[i + 6];
    s7 += a[i + 7] * b[i + 7];
  }
  float s = ((s0 + s1) + (s2 + s3)) + ((s4 + s5) + (s6 + s7));
  for (; i < d; ++i) s += a[i] * b[i];
  return s;
}

inline void axpy(float alpha, const float* __restrict x, float* __restrict y, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) y[i] += alpha * x[i];
}

// -log(sigmoid(x))
inline double softplus_neg(double x) { return x > 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x)); }

// word2vec's 64-bit LCG
using NegativeRng = std::linear_congruential_engine<std::uint64_t, 25214903917ULL, 11ULL, 0ULL>;

struct SharedState {
  const WalkCorpus& corpus;
  const TrainConfig& cfg;
  const SigmoidTable& sigmoid;
  const std::vector<NodeId>& noise;
  float* center;
  float* context;
  std::size_t total_pairs;
  std::atomic<std::size_t> processed{0};
};

struct WorkerLoss {
  std::array<double, 4> sum{};
  std::array<std::size_t, 4> count{};
};

void train_range(SharedState& st, std::size_t worker, std::size_t trace_begin, std::size_t trace_end,
                 WorkerLoss& loss) {
  const TrainConfig& cfg = st.cfg;
  const std::size_t d = cfg.dimension;
  const std::size_t window = cfg.window;
  NegativeRng rng(derive_seed(cfg.seed, 0x6e6567, worker));
  std::vector<float> grad(d);
  const double lr_span = cfg.initial_lr - cfg.final_lr;
  float lr = static_cast<float>(cfg.initial_lr);
  std::size_t local = 0;
  std::size_t since_update = 0;
  const std::size_t noise_size = st.noise.size();
  std::size_t worker_pairs = 0;
  for (std::size_t t = trace_begin; t < trace_end; ++t) {
    worker_pairs += neighborhood_pair_count(st.corpus.trace(t).size(), window);
  }
  worker_pairs = std::max<std::size_t>(worker_pairs * cfg.epochs, 1);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t t = trace_begin; t < trace_end; ++t) {
      auto trace = st.corpus.trace(t);
      const std::size_t len = trace.size();
      for (std::size_t p = 0; p < len; ++p) {
        float* f = st.center + static_cast<std::size_t>(trace[p]) * d;
        const std::size_t lo = p > window ? p - window : 0;
        const std::size_t hi = std::min(len - 1, p + window);
        for (std::size_t q = lo; q <= hi; ++q) {
          if (q == p) continue;
          if (++since_update == kLrUpdateInterval) {
            const std::size_t done = st.processed.fetch_add(since_update, std::memory_order_relaxed) + since_update;
            since_update = 0;
            const double progress = std::min(1.0, static_cast<double>(done) / static_cast<double>(st.total_pairs));
            lr = static_cast<float>(cfg.initial_lr - lr_span * progress);
          }
          const NodeId ctx = trace[q];
          std::fill(grad.begin(), grad.end(), 0.0F);
          double pair_loss = 0.0;
          for (std::size_t j = 0; j <= cfg.negative_samples; ++j) {
            NodeId target = ctx;
            float label = 1.0F;
            if (j > 0) {
              target = st.noise[(rng() >> 16) % noise_size];
              if (target == ctx) continue;
              label = 0.0F;
            }
            float* c = st.context + static_cast<std::size_t>(target) * d;
            const float x = dot(f, c, d);
            float g = 0.0F;
            if (x > kMaxExp) {
              g = (label - 1.0F) * lr;
            } else if (x < -kMaxExp) {
              g = label * lr;
            } else {
              g = (label - st.sigmoid(x)) * lr;
            }
            if (cfg.track_loss) pair_loss += softplus_neg(label > 0.5F ? x : -x);
            axpy(g, c, grad.data(), d);
            axpy(g, f, c, d);
          }
          axpy(1.0F, grad.data(), f, d);
          if (cfg.track_loss) {
            const std::size_t quarter = std::min<std::size_t>(3, 4 * local / worker_pairs);
            loss.sum[quarter] += pair_loss;
            ++loss.count[quarter];
          }
          ++local;
        }
      }
    }
  }
  st.processed.fetch_add(since_update, std::memory_order_relaxed);
}

}  // namespace

Embedding train_skipgram(const WalkCorpus& corpus, std::size_t node_count, const TrainConfig& cfg,
                         TrainStats* stats) {
  if (cfg.dimension < 1) throw std::invalid_argument("embedding dimension must be at least 1");
  if (cfg.negative_samples < 1) throw std::invalid_argument("negative_samples must be at least 1");
  if (cfg.window < 1) throw std::invalid_argument("window must be at least 1");
  if (corpus.size() == 0) throw std::invalid_argument("walk corpus is empty");
  for (NodeId u : corpus.tokens()) {
    if (u >= node_count) throw std::invalid_argument("corpus token " + std::to_string(u) + " outside node universe");
  }

  const std::size_t d = cfg.dimension;
  Embedding center(node_count, d);
  std::vector<float> context(node_count * d, 0.0F);
  {
    Rng init = make_rng(cfg.seed, 0x696e6974);
    std::uniform_real_distribution<float> dist(-0.5F / static_cast<float>(d), 0.5F / static_cast<float>(d));
    for (float& x : center.data()) x = dist(init);
  }

  const SigmoidTable sigmoid;
  const std::vector<NodeId> noise = build_noise_table(corpus, node_count);
  const std::size_t pairs = neighborhood_pair_count(corpus, cfg.window);
  SharedState st{corpus, cfg, sigmoid, noise, center.data().data(), context.data(), std::max<std::size_t>(pairs * cfg.epochs, 1)};

  const std::size_t workers = std::min(resolve_threads(cfg.workers), corpus.size());
  std::vector<WorkerLoss> losses(std::max<std::size_t>(workers, 1));
  if (workers <= 1) {
    train_range(st, 0, 0, corpus.size(), losses[0]);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = corpus.size() * w / workers;
      const std::size_t end = corpus.size() * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { train_range(st, w, begin, end, losses[w]); });
    }
  }

  for (std::size_t u = 0; u < node_count; ++u) {
    for (float x : center.row(u)) {
      if (!std::isfinite(x)) {
        throw TrainingError("non-finite embedding value for node " + std::to_string(u) +
                            "; lower the learning rate or check the corpus");
      }
    }
  }

  if (stats != nullptr) {
    stats->pairs = pairs * cfg.epochs;
    stats->quarter_loss.clear();
    if (cfg.track_loss) {
      for (std::size_t q = 0; q < 4; ++q) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const WorkerLoss& l : losses) {
          sum += l.sum[q];
          count += l.count[q];
        }
        stats->quarter_loss.push_back(count == 0 ? 0.0 : sum / static_cast<double>(count));
      }
    }
  }
  return center;
}

}  // namespace graphrec
