#include "graphrec/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace graphrec {

namespace {

using Json = nlohmann::ordered_json;

Json config_json(const PipelineConfig& cfg) {
  Json j;
  j["input"] = cfg.input.string();
  j["mechanism"] = mechanism_name(cfg.mechanism);
  j["privacy"] = cfg.privacy;
  j["enhanced"] = cfg.enhanced;
  j["seed"] = cfg.seed;
  j["deterministic"] = cfg.deterministic;
  j["samples"] = cfg.samples;
  const AttackConfig& a = cfg.attack;
  j["walk"] = {{"walk_length", a.walk.walk_length}, {"walk_times", a.walk.walk_times}, {"seed", a.walk.seed}};
  j["train"] = {{"dimension", a.train.dimension},
                {"window", a.train.window},
                {"negative_samples", a.train.negative_samples},
                {"initial_lr", a.train.initial_lr},
                {"final_lr", a.train.final_lr},
                {"epochs", a.train.epochs},
                {"seed", a.train.seed},
                {"workers", a.train.workers}};
  j["metric"] = metric_name(a.metric);
  j["gmm"] = {{"tolerance", a.gmm.tolerance},
              {"max_iterations", a.gmm.max_iterations},
              {"restarts", a.gmm.restarts},
              {"sigma_floor", a.gmm.sigma_floor},
              {"seed", a.gmm.seed}};
  return j;
}

Json privacy_json(const PrivacyReport& p) {
  Json j;
  j["delta_A"] = p.delta_a;
  j["delta_R"] = p.delta_r;
  if (p.noise_a && p.noise_r) {
    j["samples"] = p.samples;
    j["zeta_A"] = p.noise_a->zeta;
    j["zeta_R"] = p.noise_r->zeta;
    j["entropy_A"] = p.noise_a->entropy;
    j["entropy_R"] = p.noise_r->entropy;
  }
  return j;
}

Json utility_json(const UtilitySimilarity& u) {
  return {{"degree_distribution", u.degree_distribution},
          {"eigencentrality", u.eigencentrality},
          {"triangle_count", u.triangle_count}};
}

Json pr_json(const PrecisionRecall& pr) { return {{"precision", pr.precision}, {"recall", pr.recall}}; }

}  // namespace

std::string_view library_version() { return "0.3.0"; }

std::string config_to_json(const PipelineConfig& cfg) { return config_json(cfg).dump(2) + "\n"; }

std::string report_to_json(const AttackReport& r) {
  Json j;
  j["version"] = library_version();
  j["config"] = config_json(r.config);
  j["graph"] = {{"nodes", r.nodes},
                {"edges_original", r.edges_original},
                {"edges_anonymized", r.edges_anonymized},
                {"edges_recovered", r.edges_recovered},
                {"edges_added", r.anonymization.edges_added},
                {"edges_deleted", r.anonymization.edges_deleted}};
  Json auc = Json::object();
  for (const auto& [metric, value] : r.auc) auc[std::string(metric_name(metric))] = value;
  j["auc"] = std::move(auc);
  const GmmParams& p = r.gmm.params;
  j["gmm"] = {{"w0", p.w0},           {"mu0", p.mu0},
              {"sigma0", p.sigma0},   {"w1", p.w1},
              {"mu1", p.mu1},         {"sigma1", p.sigma1},
              {"loglik", r.gmm.loglik}, {"iterations", r.gmm.iterations},
              {"converged", r.gmm.converged}};
  j["predicted_fake"] = r.predicted_fake;
  j["map"] = pr_json(r.map);
  j["random_baseline"] = pr_json(r.random_baseline);
  j["privacy"] = privacy_json(r.privacy);
  return j.dump(2) + "\n";
}

std::string privacy_to_json(const PrivacyReport& report) { return privacy_json(report).dump(2) + "\n"; }

std::string utility_to_json(const UtilitySimilarity& anonymized, const UtilitySimilarity* enhanced) {
  Json j;
  j["G_vs_GA"] = utility_json(anonymized);
  if (enhanced != nullptr) j["G_vs_GF"] = utility_json(*enhanced);
  return j.dump(2) + "\n";
}

std::string anonymization_to_json(const Graph& g, const Graph& ga, const AnonymizationSummary& summary,
                                  Mechanism mechanism, double privacy, std::uint64_t seed) {
  Json j;
  j["mechanism"] = mechanism_name(mechanism);
  j["privacy"] = privacy;
  j["seed"] = seed;
  j["nodes"] = g.node_count();
  j["edges_original"] = g.edge_count();
  j["edges_anonymized"] = ga.edge_count();
  j["edges_added"] = summary.edges_added;
  j["edges_deleted"] = summary.edges_deleted;
  if (mechanism == Mechanism::saladp) {
    j["unmet_additions"] = summary.unmet_additions;
    j["unmet_deletions"] = summary.unmet_deletions;
  }
  return j.dump(2) + "\n";
}

std::string timings_to_json(const StageTimings& timings) {
  Json j = Json::object();
  for (const auto& [stage, seconds] : timings.seconds) j[stage] = seconds;
  return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace graphrec
