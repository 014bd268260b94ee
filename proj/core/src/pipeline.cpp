#include "graphrec/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "graphrec/graph_io.hpp"
#include "graphrec/parallel.hpp"
#include "graphrec/report.hpp"

namespace graphrec {

std::string_view mechanism_name(Mechanism m) { return m == Mechanism::kda ? "kda" : "saladp"; }

Mechanism parse_mechanism(std::string_view name) {
  if (name == "kda" || name == "k-da") return Mechanism::kda;
  if (name == "saladp" || name == "sala-dp") return Mechanism::saladp;
  throw std::invalid_argument("unknown mechanism '" + std::string(name) + "'");
}

std::size_t default_dimension(Mechanism m) { return m == Mechanism::kda ? 128 : 512; }

void finalize_config(PipelineConfig& cfg) {
  AttackConfig& a = cfg.attack;
  if (a.train.dimension == 0) a.train.dimension = default_dimension(cfg.mechanism);
  a.seed = cfg.seed;
  a.walk.seed = cfg.seed;
  a.train.seed = cfg.seed;
  a.gmm.seed = cfg.seed;
  a.walk.threads = resolve_threads(0);
  a.train.workers = cfg.deterministic ? 1 : resolve_threads(a.train.workers);
}

namespace {

class Stopwatch {
 public:
  Stopwatch(StageTimings* timings, std::string stage) : timings_(timings), stage_(std::move(stage)) {}
  Stopwatch(const Stopwatch&) = delete;
  Stopwatch& operator=(const Stopwatch&) = delete;
  ~Stopwatch() {
    if (timings_ != nullptr) {
      timings_->seconds[stage_] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }
  }

 private:
  StageTimings* timings_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class Fn>
auto stage(const char* name, StageTimings* timings, Fn&& fn) {
  Stopwatch watch(timings, name);
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::size_t privacy_k(double privacy) {
  if (!(privacy >= 2.0) || privacy != std::floor(privacy)) {
    throw std::invalid_argument("k-DA needs an integer k >= 2");
  }
  return static_cast<std::size_t>(privacy);
}

double privacy_epsilon(double privacy) {
  if (!(privacy > 0.0)) throw std::invalid_argument("SalaDP needs epsilon > 0");
  return privacy;
}

struct Fnv {
  std::uint64_t h = 1469598103934665603ULL;
  void bytes(const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ULL;
    }
  }
  template <class T>
  void value(T x) {
    bytes(&x, sizeof x);
  }
};

}  // namespace

std::uint64_t embedding_cache_key(const Graph& ga, const WalkConfig& walk, const TrainConfig& train) {
  Fnv f;
  f.value<std::uint64_t>(ga.node_count());
  f.value<std::uint64_t>(ga.edge_count());
  f.bytes(ga.edges().data(), ga.edges().size() * sizeof(Edge));
  f.value<std::uint64_t>(walk.walk_length);
  f.value<std::uint64_t>(walk.walk_times);
  f.value(walk.seed);
  f.value<std::uint64_t>(train.dimension);
  f.value<std::uint64_t>(train.window);
  f.value<std::uint64_t>(train.negative_samples);
  f.value(train.initial_lr);
  f.value(train.final_lr);
  f.value<std::uint64_t>(train.epochs);
  f.value(train.seed);
  f.value<std::uint64_t>(train.workers);
  return f.h;
}

Anonymized anonymize(const Graph& g, Mechanism mechanism, double privacy, std::uint64_t seed) {
  if (mechanism == Mechanism::kda) {
    KdaResult r = kda_anonymize(g, {privacy_k(privacy), seed});
    return {std::move(r.graph), {r.edges_added, r.edges_deleted}};
  }
  SaladpResult r = saladp_anonymize(g, {privacy_epsilon(privacy), seed});
  return {std::move(r.graph), {r.edges_added, r.edges_deleted, r.unmet_additions, r.unmet_deletions}};
}

EnhancementInputs enhancement_inputs(const Graph& g, const AttackConfig& attack) {
  EnhancementInputs in;
  in.embedding = embed_graph(g, attack);
  in.prior = fit_prior(score_edges(g, in.embedding, attack.metric));
  return in;
}

Anonymized anonymize_enhanced(const Graph& g, Mechanism mechanism, double privacy, std::uint64_t seed,
                              const EnhancementInputs& inputs, Metric metric) {
  if (mechanism == Mechanism::kda) {
    KdaResult r = enhanced_kda(g, {privacy_k(privacy), seed}, inputs.prior, inputs.embedding, metric);
    return {std::move(r.graph), {r.edges_added, r.edges_deleted}};
  }
  SaladpResult r = enhanced_saladp(g, {privacy_epsilon(privacy), seed}, inputs.prior, inputs.embedding, metric);
  return {std::move(r.graph), {r.edges_added, r.edges_deleted, r.unmet_additions, r.unmet_deletions}};
}

Embedding embed_graph(const Graph& ga, const AttackConfig& cfg, StageTimings* timings) {
  std::filesystem::path cached;
  if (!cfg.cache_dir.empty()) {
    char name[40];
    std::snprintf(name, sizeof name, "emb-%016llx.bin",
                  static_cast<unsigned long long>(embedding_cache_key(ga, cfg.walk, cfg.train)));
    cached = cfg.cache_dir / name;
    if (std::filesystem::exists(cached)) {
      Embedding emb = load_embedding(cached);
      if (emb.rows() == ga.node_count() && emb.dimension() == cfg.train.dimension) return emb;
    }
  }
  const WalkCorpus corpus = stage("walks", timings, [&] { return generate_walks(ga, cfg.walk); });
  Embedding emb = stage("train", timings, [&] { return train_skipgram(corpus, ga.node_count(), cfg.train); });
  if (!cached.empty()) {
    std::filesystem::create_directories(cfg.cache_dir);
    // write then rename so a concurrent reader never sees a partial file
    const std::filesystem::path tmp = cached.string() + ".tmp";
    save_embedding(tmp, emb, EmbeddingFormat::binary);
    std::filesystem::rename(tmp, cached);
  }
  return emb;
}

AttackArtifacts attack_anonymized(const Graph& ga, const AttackConfig& cfg, StageTimings* timings) {
  AttackArtifacts out;
  out.embedding = embed_graph(ga, cfg, timings);
  stage("score", timings, [&] {
    for (Metric m : kAllMetrics) out.scores.emplace(m, score_edges(ga, &out.embedding, m));
    return 0;
  });
  const EdgeScores& scores = out.scores.at(cfg.metric);
  out.gmm = stage("fit-gmm", timings, [&] { return fit_gmm(scores, cfg.gmm); });
  out.posteriors = stage("classify", timings, [&] { return map_classify(scores, out.gmm.params); });
  out.recovered = stage("recover", timings, [&] { return recover_graph(ga, out.posteriors); });
  return out;
}

AttackReport evaluate_attack(const Graph& g, const Graph& ga, const AttackArtifacts& artifacts,
                             const PipelineConfig& cfg) {
  return stage("eval", nullptr, [&] {
    AttackReport r;
    r.config = cfg;
    r.nodes = g.node_count();
    r.edges_original = g.edge_count();
    r.edges_anonymized = ga.edge_count();
    r.edges_recovered = artifacts.recovered.edge_count();
    const EdgeDiff truth = edge_diff(g, ga);
    r.anonymization = {truth.added.size(), truth.deleted.size(), 0, 0};
    for (const auto& [metric, scores] : artifacts.scores) r.auc[metric] = roc_auc(scores, truth).auc;
    r.gmm = artifacts.gmm;
    const std::vector<Edge> predicted = artifacts.posteriors.predicted_fake();
    r.predicted_fake = predicted.size();
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (predicted.empty()) {
      r.map = {nan, 0.0};
      r.random_baseline = {nan, 0.0};
    } else {
      r.map = precision_recall(predicted, truth);
      r.random_baseline = precision_recall(baseline_random(ga, predicted.size(), cfg.seed), truth);
    }
    r.privacy.delta_a = degree_difference(g, ga);
    r.privacy.delta_r = degree_difference(g, artifacts.recovered);
    return r;
  });
}

std::pair<NoiseStats, NoiseStats> noise_over_samples(const Graph& g, const PipelineConfig& cfg) {
  if (cfg.mechanism != Mechanism::saladp) throw std::invalid_argument("dK-2 noise statistics apply to SalaDP");
  if (cfg.samples == 0) throw std::invalid_argument("noise statistics need at least one sample");
  std::vector<Graph> anonymized;
  std::vector<Graph> recovered;
  anonymized.reserve(cfg.samples);
  recovered.reserve(cfg.samples);
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const std::uint64_t seed = derive_seed(cfg.seed, 0x73616d70, i);
    Graph ga = anonymize(g, cfg.mechanism, cfg.privacy, seed).graph;
    AttackConfig attack = cfg.attack;
    attack.seed = attack.walk.seed = attack.train.seed = attack.gmm.seed = seed;
    attack.cache_dir.clear();
    recovered.push_back(attack_anonymized(ga, attack).recovered);
    anonymized.push_back(std::move(ga));
  }
  return {dk2_noise_stats(g, anonymized), dk2_noise_stats(g, recovered)};
}

namespace {

void write_outputs(const std::filesystem::path& dir, const AttackRun& run, const EdgeDiff& truth) {
  std::filesystem::create_directories(dir);
  save_edge_list(dir / "anonymized.edges", run.anonymized);
  save_edge_list(dir / "recovered.edges", run.artifacts.recovered);
  save_embedding(dir / "embedding.bin", run.artifacts.embedding, EmbeddingFormat::binary);
  const EdgeScores& scores = run.artifacts.scores.at(run.report.config.attack.metric);
  save_scores_csv(dir / "scores.csv", scores);
  write_text_file(dir / "gmm.json", gmm_fit_to_json(run.artifacts.gmm) + "\n");
  {
    std::ofstream out(dir / "posteriors.csv");
    write_posterior_csv(out, run.artifacts.posteriors);
  }
  const std::vector<bool> fake = fake_labels(scores, truth);
  {
    std::ofstream out(dir / "roc.csv");
    write_roc_csv(out, roc_curve(scores.values(), fake));
  }
  {
    std::ofstream out(dir / "histogram.csv");
    write_histogram_csv(out, scores, fake);
  }
  write_text_file(dir / "report.json", report_to_json(run.report));
  write_text_file(dir / "timings.json", timings_to_json(run.timings));
}

}  // namespace

AttackRun run_attack(const Graph& g, PipelineConfig cfg) {
  finalize_config(cfg);
  AttackRun run;
  if (cfg.enhanced) {
    const EnhancementInputs inputs = stage("enhance-prior", &run.timings, [&] { return enhancement_inputs(g, cfg.attack); });
    run.anonymized = stage("anonymize", &run.timings, [&] {
      return anonymize_enhanced(g, cfg.mechanism, cfg.privacy, cfg.seed, inputs, cfg.attack.metric).graph;
    });
  } else {
    run.anonymized = stage("anonymize", &run.timings, [&] { return anonymize(g, cfg.mechanism, cfg.privacy, cfg.seed).graph; });
  }
  run.artifacts = attack_anonymized(run.anonymized, cfg.attack, &run.timings);
  {
    Stopwatch watch(&run.timings, "eval");
    run.report = evaluate_attack(g, run.anonymized, run.artifacts, cfg);
  }
  if (cfg.samples > 0 && cfg.mechanism == Mechanism::saladp) {
    auto [a, r] = stage("noise-samples", &run.timings, [&] { return noise_over_samples(g, cfg); });
    run.report.privacy.noise_a = a;
    run.report.privacy.noise_r = r;
    run.report.privacy.samples = cfg.samples;
  }
  if (!cfg.output_dir.empty()) {
    stage("write", &run.timings, [&] {
      write_outputs(cfg.output_dir, run, edge_diff(g, run.anonymized));
      return 0;
    });
  }
  return run;
}

AttackRun run_attack(PipelineConfig cfg) {
  const Graph g = stage("load", nullptr, [&] { return load_edge_list(cfg.input).graph; });
  return run_attack(g, std::move(cfg));
}

std::vector<SweepPoint> hyperparam_sweep(const Graph& g, PipelineConfig cfg, std::vector<SweepPoint> grid) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  finalize_config(cfg);
  const Graph ga = stage("anonymize", nullptr, [&] { return anonymize(g, cfg.mechanism, cfg.privacy, cfg.seed).graph; });
  const EdgeDiff truth = edge_diff(g, ga);
  for (SweepPoint& point : grid) {
    AttackConfig attack = cfg.attack;
    if (point.walk_length != 0) attack.walk.walk_length = point.walk_length;
    if (point.walk_times != 0) attack.walk.walk_times = point.walk_times;
    if (point.dimension != 0) attack.train.dimension = point.dimension;
    point.walk_length = attack.walk.walk_length;
    point.walk_times = attack.walk.walk_times;
    point.dimension = attack.train.dimension;
    const Embedding emb = embed_graph(ga, attack);
    point.auc = stage("eval", nullptr, [&] { return roc_auc(score_edges(ga, &emb, attack.metric), truth).auc; });
  }
  return grid;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& rows) {
  out << "l,t,d,auc\n";
  for (const SweepPoint& p : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", p.auc);
    out << p.walk_length << ',' << p.walk_times << ',' << p.dimension << ',' << buf << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const EdgeScores& scores, const std::vector<bool>& fake) {
  constexpr std::size_t kBins = 50;
  double lo = -1.0, hi = 1.0;
  if (scores.metric != Metric::cosine && !scores.records.empty()) {
    lo = hi = scores.records.front().score;
    for (const EdgeScore& r : scores.records) {
      lo = std::min(lo, r.score);
      hi = std::max(hi, r.score);
    }
    if (hi == lo) hi = lo + 1.0;
  }
  const double width = (hi - lo) / kBins;
  std::vector<std::size_t> orig(kBins, 0), fk(kBins, 0);
  for (std::size_t i = 0; i < scores.records.size(); ++i) {
    const double x = (scores.records[i].score - lo) / width;
    const auto bin = static_cast<std::size_t>(std::clamp(x, 0.0, static_cast<double>(kBins - 1)));
    (fake[i] ? fk : orig)[bin] += 1;
  }
  out << "bin_low,bin_high,original,fake\n";
  for (std::size_t b = 0; b < kBins; ++b) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.10g,%.10g", lo + width * static_cast<double>(b), lo + width * static_cast<double>(b + 1));
    out << buf << ',' << orig[b] << ',' << fk[b] << '\n';
  }
}

}  // namespace graphrec
