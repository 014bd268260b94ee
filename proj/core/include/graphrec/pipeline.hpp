#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphrec/anonymize.hpp"
#include "graphrec/embed.hpp"
#include "graphrec/enhance.hpp"
#include "graphrec/metrics.hpp"
#include "graphrec/plausibility.hpp"
#include "graphrec/recover.hpp"

namespace graphrec {

enum class Mechanism { kda, saladp };

std::string_view mechanism_name(Mechanism m);
Mechanism parse_mechanism(std::string_view name);

/// Embedding dimension used when none is given: 128 for k-DA, 512 for SalaDP.
std::size_t default_dimension(Mechanism m);

/// Everything the attack stages may see besides the anonymized graph.
struct AttackConfig {
  WalkConfig walk;
  TrainConfig train;
  Metric metric = Metric::cosine;
  GmmOptions gmm;
  std::uint64_t seed = 1;
  /// Embeddings are cached here keyed by a hash of the graph and the
  /// walk/train settings; empty disables caching.
  std::filesystem::path cache_dir;
};

/// AttackConfig with dimension 0, resolved per mechanism by finalize_config.
inline AttackConfig default_attack_config() {
  AttackConfig a;
  a.train.dimension = 0;
  return a;
}

struct PipelineConfig {
  std::filesystem::path input;
  Mechanism mechanism = Mechanism::kda;
  double privacy = 50.0;  ///< k for k-DA, epsilon for SalaDP
  bool enhanced = false;
  AttackConfig attack = default_attack_config();
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;
  std::size_t samples = 0;  ///< SalaDP runs for the dK-2 noise statistics; 0 skips them
  bool deterministic = true;
};

/// Applies the seed to every stage and picks defaults (dimension per
/// mechanism, single training worker in deterministic mode).
void finalize_config(PipelineConfig& cfg);

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct AnonymizationSummary {
  std::size_t edges_added = 0;
  std::size_t edges_deleted = 0;
  std::int64_t unmet_additions = 0;  ///< SalaDP only
  std::int64_t unmet_deletions = 0;  ///< SalaDP only
};

struct Anonymized {
  Graph graph;
  AnonymizationSummary summary;
};

/// Standard mechanism selected by cfg.mechanism and cfg.privacy.
Anonymized anonymize(const Graph& g, Mechanism mechanism, double privacy, std::uint64_t seed);

struct EnhancementInputs {
  PlausibilityPrior prior;
  Embedding embedding;  ///< learned on the original graph
};

/// Embeds the original graph with `attack` settings and fits the prior on
/// its edge plausibilities.
EnhancementInputs enhancement_inputs(const Graph& g, const AttackConfig& attack);

Anonymized anonymize_enhanced(const Graph& g, Mechanism mechanism, double privacy, std::uint64_t seed,
                              const EnhancementInputs& inputs, Metric metric);

struct StageTimings {
  std::map<std::string, double> seconds;
};

struct AttackArtifacts {
  Embedding embedding;
  std::map<Metric, EdgeScores> scores;  ///< every metric, for the AUC table
  GmmFit gmm;
  PosteriorTable posteriors;
  Graph recovered;
};

/// Embedding stage alone, with the on-disk cache.
Embedding embed_graph(const Graph& ga, const AttackConfig& cfg, StageTimings* timings = nullptr);

/// The attack: embed, score, fit, classify, recover. Sees only ga.
AttackArtifacts attack_anonymized(const Graph& ga, const AttackConfig& cfg, StageTimings* timings = nullptr);

struct PrivacyReport {
  double delta_a = 0.0;
  double delta_r = 0.0;
  std::optional<NoiseStats> noise_a;
  std::optional<NoiseStats> noise_r;
  std::size_t samples = 0;
};

struct AttackReport {
  PipelineConfig config;
  std::size_t nodes = 0;
  std::size_t edges_original = 0;
  std::size_t edges_anonymized = 0;
  std::size_t edges_recovered = 0;
  AnonymizationSummary anonymization;
  std::map<Metric, double> auc;
  GmmFit gmm;
  std::size_t predicted_fake = 0;
  PrecisionRecall map;
  PrecisionRecall random_baseline;
  PrivacyReport privacy;
};

/// Ground-truth evaluation of an attack against the original graph.
AttackReport evaluate_attack(const Graph& g, const Graph& ga, const AttackArtifacts& artifacts,
                             const PipelineConfig& cfg);

/// dK-2 noise of anonymized and recovered graphs over cfg.samples seeds.
/// SalaDP only.
std::pair<NoiseStats, NoiseStats> noise_over_samples(const Graph& g, const PipelineConfig& cfg);

struct AttackRun {
  AttackReport report;
  Graph anonymized;
  AttackArtifacts artifacts;
  StageTimings timings;
};

/// Full pipeline on an in-memory graph. Writes artifacts when
/// cfg.output_dir is set.
AttackRun run_attack(const Graph& g, PipelineConfig cfg);
/// Loads cfg.input first.
AttackRun run_attack(PipelineConfig cfg);

struct SweepPoint {
  std::size_t walk_length = 0;
  std::size_t walk_times = 0;
  std::size_t dimension = 0;
  double auc = 0.0;
};

/// One attack per grid point over a single anonymized graph.
std::vector<SweepPoint> hyperparam_sweep(const Graph& g, PipelineConfig cfg, std::vector<SweepPoint> grid);
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& rows);

/// Histogram CSV "bin_low,bin_high,original,fake" with 50 equal bins over
/// [-1, 1] for cosine and over the observed range otherwise.
void write_histogram_csv(std::ostream& out, const EdgeScores& scores, const std::vector<bool>& fake);

/// FNV-1a over the edge list and the walk/train settings.
std::uint64_t embedding_cache_key(const Graph& ga, const WalkConfig& walk, const TrainConfig& train);

}  // namespace graphrec
