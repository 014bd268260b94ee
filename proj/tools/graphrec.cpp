// graphrec: anonymize social graphs and run the embedding-based recovery attack.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "graphrec/anonymize.hpp"
#include "graphrec/embed.hpp"
#include "graphrec/enhance.hpp"
#include "graphrec/graph_io.hpp"
#include "graphrec/metrics.hpp"
#include "graphrec/parallel.hpp"
#include "graphrec/pipeline.hpp"
#include "graphrec/plausibility.hpp"
#include "graphrec/recover.hpp"
#include "graphrec/report.hpp"
#include "graphrec/synthetic.hpp"

namespace gr = graphrec;

namespace {

struct EmbedOptions {
  std::size_t walk_length = 100;
  std::size_t walk_times = 80;
  std::size_t dimension = 0;
  std::size_t window = 10;
  std::size_t negative = 5;
  std::size_t epochs = 1;
  bool deterministic = false;
};

void add_embed_options(CLI::App* cmd, EmbedOptions& o) {
  cmd->add_option("-l,--walk-length", o.walk_length, "steps per random walk")->capture_default_str();
  cmd->add_option("-t,--walk-times", o.walk_times, "walks started per node")->capture_default_str();
  cmd->add_option("-d,--dimension", o.dimension, "embedding dimension (default 128 for kda, 512 for saladp)");
  cmd->add_option("--window", o.window, "skip-gram context radius")->capture_default_str();
  cmd->add_option("--negative", o.negative, "negative samples per pair")->capture_default_str();
  cmd->add_option("--epochs", o.epochs, "passes over the walk corpus")->capture_default_str();
  cmd->add_flag("--deterministic", o.deterministic, "single training worker; reproducible output");
}

gr::AttackConfig attack_config(const EmbedOptions& o, gr::Mechanism mechanism, std::uint64_t seed) {
  gr::AttackConfig a;
  a.walk.walk_length = o.walk_length;
  a.walk.walk_times = o.walk_times;
  a.walk.seed = seed;
  a.walk.threads = gr::resolve_threads(0);
  a.train.dimension = o.dimension == 0 ? gr::default_dimension(mechanism) : o.dimension;
  a.train.window = o.window;
  a.train.negative_samples = o.negative;
  a.train.epochs = o.epochs;
  a.train.seed = seed;
  a.train.workers = o.deterministic ? 1 : gr::resolve_threads(0);
  a.gmm.seed = seed;
  a.seed = seed;
  return a;
}

gr::Graph load_graph(const std::string& path) {
  gr::LoadedGraph loaded = gr::load_edge_list(path);
  if (loaded.self_loops_dropped > 0 || loaded.duplicates_collapsed > 0) {
    std::fprintf(stderr, "%s: dropped %zu self-loops, collapsed %zu duplicate edges\n", path.c_str(),
                 loaded.self_loops_dropped, loaded.duplicates_collapsed);
  }
  return std::move(loaded.graph);
}

gr::Mechanism mechanism_from(const std::string& name) { return gr::parse_mechanism(name); }

double privacy_from(gr::Mechanism m, std::size_t k, double epsilon) {
  return m == gr::Mechanism::kda ? static_cast<double>(k) : epsilon;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoul(item));
  }
  return out;
}

void print_json_or_write(const std::string& json, const std::string& path) {
  if (path.empty()) {
    std::cout << json;
  } else {
    gr::write_text_file(path, json);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph anonymization and embedding-based graph recovery"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(gr::library_version()));

  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "random seed shared by every stage")->capture_default_str();

  // anonymize
  struct {
    std::string input, output, meta, mechanism = "kda", embedding, prior, metric = "cosine";
    std::size_t k = 50;
    double epsilon = 10.0;
    bool enhanced = false;
  } an;
  auto* anonymize = app.add_subcommand("anonymize", "apply k-DA or SalaDP to a graph");
  anonymize->add_option("-i,--input,--in", an.input, "original edge list")->required();
  anonymize->add_option("-o,--output,--out", an.output, "anonymized edge list")->required();
  anonymize->add_option("--meta", an.meta, "metadata JSON: edge counts and unmet dK-2 deltas");
  anonymize->add_option("-m,--mechanism", an.mechanism, "kda or saladp")->capture_default_str();
  anonymize->add_option("-k", an.k, "k for k-DA")->capture_default_str();
  anonymize->add_option("-e,--epsilon", an.epsilon, "epsilon for SalaDP")->capture_default_str();
  anonymize->add_flag("--enhanced", an.enhanced, "pick fake-edge partners by plausibility prior");
  anonymize->add_option("--embedding", an.embedding, "embedding of the original graph (with --enhanced)");
  anonymize->add_option("--prior", an.prior, "prior JSON (with --enhanced)");
  anonymize->add_option("--metric", an.metric, "embedding metric for --enhanced")->capture_default_str();

  // embed
  std::string embed_input, embed_output, embed_format = "text", embed_mechanism = "kda";
  EmbedOptions embed_opts;
  auto* embed = app.add_subcommand("embed", "random walks plus skip-gram training");
  embed->add_option("-i,--input", embed_input, "edge list")->required();
  embed->add_option("-o,--output", embed_output, "embedding file")->required();
  embed->add_option("--format", embed_format, "text or binary")->capture_default_str();
  embed->add_option("-m,--mechanism", embed_mechanism, "selects the default dimension")->capture_default_str();
  add_embed_options(embed, embed_opts);

  // score
  std::string score_input, score_embedding, score_metric = "cosine", score_output;
  auto* score = app.add_subcommand("score", "edge plausibility for every edge");
  score->add_option("-i,--input", score_input, "edge list")->required();
  score->add_option("--embedding", score_embedding, "embedding file (embedding metrics)");
  score->add_option("--metric", score_metric, "cosine, euclidean, bray_curtis, embeddedness, jaccard, adamic_adar")
      ->capture_default_str();
  score->add_option("-o,--output", score_output, "scores CSV")->required();

  // fit-gmm
  std::string fit_scores, fit_output;
  gr::GmmOptions fit_opts;
  auto* fit = app.add_subcommand("fit-gmm", "two-component Gaussian mixture over edge scores");
  fit->add_option("--scores", fit_scores, "scores CSV")->required();
  fit->add_option("-o,--output", fit_output, "parameters JSON (stdout if omitted)");
  fit->add_option("--tolerance", fit_opts.tolerance, "log-likelihood convergence threshold")->capture_default_str();
  fit->add_option("--restarts", fit_opts.restarts, "jittered restarts")->capture_default_str();

  // recover
  std::string rec_input, rec_scores, rec_gmm, rec_output, rec_posteriors;
  auto* recover = app.add_subcommand("recover", "delete MAP-predicted fake edges");
  recover->add_option("-i,--input", rec_input, "anonymized edge list")->required();
  recover->add_option("--scores", rec_scores, "scores CSV")->required();
  recover->add_option("--gmm", rec_gmm, "parameters JSON")->required();
  recover->add_option("-o,--output", rec_output, "recovered edge list")->required();
  recover->add_option("--posteriors", rec_posteriors, "posterior CSV output");

  // eval
  struct {
    std::string original, anonymized, recovered, posteriors, roc, output;
    std::vector<std::string> scores;
    bool utility = false;
  } ev;
  auto* eval = app.add_subcommand("eval", "evaluate an attack against the original graph");
  eval->add_option("--original", ev.original, "original edge list")->required();
  eval->add_option("--anonymized", ev.anonymized, "anonymized edge list")->required();
  eval->add_option("--scores", ev.scores, "scores CSV, repeatable; one AUC each");
  eval->add_option("--recovered", ev.recovered, "recovered edge list (degree differences)");
  eval->add_option("--posteriors", ev.posteriors, "posterior CSV (precision and recall)");
  eval->add_option("--roc", ev.roc, "ROC points CSV for the first scores file");
  eval->add_flag("--utility", ev.utility, "utility similarity of original and anonymized");
  eval->add_option("-o,--output", ev.output, "report JSON (stdout if omitted)");

  // enhance
  struct {
    std::string input, output, mechanism = "kda", embedding, prior, prior_out, metric = "cosine";
    std::size_t k = 50;
    double epsilon = 10.0;
  } en;
  EmbedOptions enhance_opts;
  auto* enhance = app.add_subcommand("enhance", "enhanced anonymization; embeds and fits the prior when not given");
  enhance->add_option("-i,--input", en.input, "original edge list")->required();
  enhance->add_option("-o,--output", en.output, "enhanced anonymized edge list")->required();
  enhance->add_option("-m,--mechanism", en.mechanism, "kda or saladp")->capture_default_str();
  enhance->add_option("-k", en.k, "k for k-DA")->capture_default_str();
  enhance->add_option("-e,--epsilon", en.epsilon, "epsilon for SalaDP")->capture_default_str();
  enhance->add_option("--embedding", en.embedding, "embedding of the original graph");
  enhance->add_option("--prior", en.prior, "prior JSON");
  enhance->add_option("--prior-out", en.prior_out, "write the fitted prior here");
  enhance->add_option("--metric", en.metric, "embedding metric")->capture_default_str();
  add_embed_options(enhance, enhance_opts);

  // sweep
  struct {
    std::string input, output, mechanism = "kda", lengths = "100", times = "80", dims, metric = "cosine", cache;
    std::size_t k = 50;
    double epsilon = 10.0;
  } sw;
  EmbedOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "attack AUC over a grid of walk length, walk count and dimension");
  sweep->add_option("-i,--input", sw.input, "original edge list")->required();
  sweep->add_option("-o,--output", sw.output, "CSV l,t,d,auc (stdout if omitted)");
  sweep->add_option("-m,--mechanism", sw.mechanism, "kda or saladp")->capture_default_str();
  sweep->add_option("-k", sw.k, "k for k-DA")->capture_default_str();
  sweep->add_option("-e,--epsilon", sw.epsilon, "epsilon for SalaDP")->capture_default_str();
  sweep->add_option("--lengths", sw.lengths, "comma-separated walk lengths")->capture_default_str();
  sweep->add_option("--times", sw.times, "comma-separated walks per node")->capture_default_str();
  sweep->add_option("--dims", sw.dims, "comma-separated dimensions (default per mechanism)");
  sweep->add_option("--metric", sw.metric, "embedding metric")->capture_default_str();
  sweep->add_option("--cache-dir", sw.cache, "embedding cache directory");
  sweep->add_option("--window", sweep_opts.window, "skip-gram context radius")->capture_default_str();
  sweep->add_option("--negative", sweep_opts.negative, "negative samples per pair")->capture_default_str();
  sweep->add_flag("--deterministic", sweep_opts.deterministic, "single training worker");

  // attack
  struct {
    std::string input, output_dir, mechanism = "kda", metric = "cosine", cache;
    std::size_t k = 50;
    double epsilon = 10.0;
    std::size_t samples = 100;
    bool enhanced = false;
  } at;
  EmbedOptions attack_opts;
  auto* attack = app.add_subcommand("attack", "end to end: anonymize, embed, score, fit, recover, evaluate");
  attack->add_option("-i,--input", at.input, "original edge list")->required();
  attack->add_option("-o,--output-dir", at.output_dir, "directory for artifacts and report.json")->required();
  attack->add_option("-m,--mechanism", at.mechanism, "kda or saladp")->capture_default_str();
  attack->add_option("-k", at.k, "k for k-DA")->capture_default_str();
  attack->add_option("-e,--epsilon", at.epsilon, "epsilon for SalaDP")->capture_default_str();
  attack->add_option("--metric", at.metric, "plausibility metric for the GMM")->capture_default_str();
  attack->add_option("--samples", at.samples, "SalaDP samples for the dK-2 noise statistics (0 skips)")
      ->capture_default_str();
  attack->add_flag("--enhanced", at.enhanced, "attack the enhanced mechanism instead");
  attack->add_option("--cache-dir", at.cache, "embedding cache directory");
  add_embed_options(attack, attack_opts);

  // generate
  struct {
    std::string kind = "social", output;
    std::size_t nodes = 4039;
    double p = 0.01;
  } gen;
  auto* generate = app.add_subcommand("generate", "write a synthetic graph");
  generate->add_option("--kind", gen.kind, "social or er")->capture_default_str();
  generate->add_option("-n,--nodes", gen.nodes, "node count")->capture_default_str();
  generate->add_option("-p", gen.p, "edge probability for er")->capture_default_str();
  generate->add_option("-o,--output", gen.output, "edge list")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*anonymize) {
      const gr::Graph g = load_graph(an.input);
      const gr::Mechanism m = mechanism_from(an.mechanism);
      const double privacy = privacy_from(m, an.k, an.epsilon);
      gr::Anonymized out;
      if (an.enhanced) {
        if (an.embedding.empty() || an.prior.empty()) {
          throw std::invalid_argument("--enhanced needs --embedding and --prior (or use the enhance subcommand)");
        }
        gr::EnhancementInputs inputs{gr::prior_from_json(gr::read_text_file(an.prior)), gr::load_embedding(an.embedding)};
        out = gr::anonymize_enhanced(g, m, privacy, seed, inputs, gr::parse_metric(an.metric));
      } else {
        out = gr::anonymize(g, m, privacy, seed);
      }
      gr::save_edge_list(an.output, out.graph);
      if (!an.meta.empty()) gr::write_text_file(an.meta, gr::anonymization_to_json(g, out.graph, out.summary, m, privacy, seed));
      std::fprintf(stderr, "edges %zu -> %zu (added %zu, deleted %zu)\n", g.edge_count(), out.graph.edge_count(),
                   out.summary.edges_added, out.summary.edges_deleted);
    } else if (*embed) {
      const gr::Graph g = load_graph(embed_input);
      const gr::AttackConfig a = attack_config(embed_opts, mechanism_from(embed_mechanism), seed);
      const gr::Embedding emb = gr::embed_graph(g, a);
      gr::save_embedding(embed_output, emb, embed_format == "binary" ? gr::EmbeddingFormat::binary : gr::EmbeddingFormat::text);
    } else if (*score) {
      const gr::Graph g = load_graph(score_input);
      const gr::Metric metric = gr::parse_metric(score_metric);
      gr::Embedding emb;
      if (gr::uses_embedding(metric)) {
        if (score_embedding.empty()) throw std::invalid_argument("metric " + score_metric + " needs --embedding");
        emb = gr::load_embedding(score_embedding);
      }
      gr::save_scores_csv(score_output, gr::score_edges(g, gr::uses_embedding(metric) ? &emb : nullptr, metric));
    } else if (*fit) {
      fit_opts.seed = seed;
      const gr::GmmFit result = gr::fit_gmm(gr::load_scores_csv(fit_scores), fit_opts);
      if (!result.converged) std::fprintf(stderr, "warning: EM stopped after %zu iterations without converging\n", result.iterations);
      print_json_or_write(gr::gmm_fit_to_json(result) + "\n", fit_output);
    } else if (*recover) {
      const gr::Graph ga = load_graph(rec_input);
      const gr::GmmFit params = gr::gmm_fit_from_json(gr::read_text_file(rec_gmm));
      const gr::PosteriorTable table = gr::map_classify(gr::load_scores_csv(rec_scores), params.params);
      gr::save_edge_list(rec_output, gr::recover_graph(ga, table));
      if (!rec_posteriors.empty()) {
        std::ofstream out(rec_posteriors);
        gr::write_posterior_csv(out, table);
      }
    } else if (*eval) {
      const gr::Graph g = load_graph(ev.original);
      const gr::Graph ga = load_graph(ev.anonymized);
      const gr::EdgeDiff truth = gr::edge_diff(g, ga);
      std::ostringstream json;
      json << "{\n  \"edges_added\": " << truth.added.size() << ",\n  \"edges_deleted\": " << truth.deleted.size();
      for (std::size_t i = 0; i < ev.scores.size(); ++i) {
        const gr::EdgeScores s = gr::load_scores_csv(ev.scores[i]);
        const gr::RocResult roc = gr::roc_auc(s, truth);
        json << ",\n  \"auc_" << gr::metric_name(s.metric) << "\": " << roc.auc;
        if (i == 0 && !ev.roc.empty()) {
          std::ofstream out(ev.roc);
          gr::write_roc_csv(out, roc);
        }
      }
      json << ",\n  \"delta_A\": " << gr::degree_difference(g, ga);
      if (!ev.recovered.empty()) json << ",\n  \"delta_R\": " << gr::degree_difference(g, load_graph(ev.recovered));
      if (!ev.posteriors.empty()) {
        std::ifstream in(ev.posteriors);
        if (!in) throw std::runtime_error("cannot open " + ev.posteriors);
        const auto predicted = gr::read_posterior_csv(in).predicted_fake();
        if (predicted.empty()) {
          json << ",\n  \"predicted_fake\": 0";
        } else {
          const gr::PrecisionRecall pr = gr::precision_recall(predicted, truth);
          const gr::PrecisionRecall rnd = gr::precision_recall(gr::baseline_random(ga, predicted.size(), seed), truth);
          json << ",\n  \"predicted_fake\": " << predicted.size() << ",\n  \"precision\": " << pr.precision
               << ",\n  \"recall\": " << pr.recall << ",\n  \"random_precision\": " << rnd.precision
               << ",\n  \"random_recall\": " << rnd.recall;
        }
      }
      if (ev.utility) {
        const gr::UtilitySimilarity u = gr::utility_similarity(gr::utility_vectors(g), gr::utility_vectors(ga));
        json << ",\n  \"utility\": {\"degree_distribution\": " << u.degree_distribution
             << ", \"eigencentrality\": " << u.eigencentrality << ", \"triangle_count\": " << u.triangle_count << "}";
      }
      json << "\n}\n";
      print_json_or_write(json.str(), ev.output);
    } else if (*enhance) {
      const gr::Graph g = load_graph(en.input);
      const gr::Mechanism m = mechanism_from(en.mechanism);
      const gr::Metric metric = gr::parse_metric(en.metric);
      gr::EnhancementInputs inputs;
      if (en.embedding.empty()) {
        inputs.embedding = gr::embed_graph(g, attack_config(enhance_opts, m, seed));
      } else {
        inputs.embedding = gr::load_embedding(en.embedding);
      }
      inputs.prior = en.prior.empty() ? gr::fit_prior(gr::score_edges(g, inputs.embedding, metric))
                                      : gr::prior_from_json(gr::read_text_file(en.prior));
      if (!en.prior_out.empty()) gr::write_text_file(en.prior_out, gr::prior_to_json(inputs.prior) + "\n");
      const gr::Anonymized out = gr::anonymize_enhanced(g, m, privacy_from(m, en.k, en.epsilon), seed, inputs, metric);
      gr::save_edge_list(en.output, out.graph);
      std::fprintf(stderr, "edges %zu -> %zu (added %zu, deleted %zu)\n", g.edge_count(), out.graph.edge_count(),
                   out.summary.edges_added, out.summary.edges_deleted);
    } else if (*sweep) {
      const gr::Graph g = load_graph(sw.input);
      gr::PipelineConfig cfg;
      cfg.mechanism = mechanism_from(sw.mechanism);
      cfg.privacy = privacy_from(cfg.mechanism, sw.k, sw.epsilon);
      cfg.seed = seed;
      cfg.deterministic = sweep_opts.deterministic;
      cfg.attack.metric = gr::parse_metric(sw.metric);
      cfg.attack.train.window = sweep_opts.window;
      cfg.attack.train.negative_samples = sweep_opts.negative;
      cfg.attack.cache_dir = sw.cache;
      std::vector<std::size_t> dims = parse_list(sw.dims);
      if (dims.empty()) dims.push_back(gr::default_dimension(cfg.mechanism));
      std::vector<gr::SweepPoint> grid;
      for (std::size_t l : parse_list(sw.lengths)) {
        for (std::size_t t : parse_list(sw.times)) {
          for (std::size_t d : dims) grid.push_back({l, t, d, 0.0});
        }
      }
      const auto rows = gr::hyperparam_sweep(g, cfg, grid);
      if (sw.output.empty()) {
        gr::write_sweep_csv(std::cout, rows);
      } else {
        std::ofstream out(sw.output);
        gr::write_sweep_csv(out, rows);
      }
    } else if (*attack) {
      gr::PipelineConfig cfg;
      cfg.input = at.input;
      cfg.mechanism = mechanism_from(at.mechanism);
      cfg.privacy = privacy_from(cfg.mechanism, at.k, at.epsilon);
      cfg.enhanced = at.enhanced;
      cfg.seed = seed;
      cfg.output_dir = at.output_dir;
      cfg.samples = at.samples;
      cfg.deterministic = attack_opts.deterministic;
      cfg.attack = attack_config(attack_opts, cfg.mechanism, seed);
      cfg.attack.metric = gr::parse_metric(at.metric);
      cfg.attack.cache_dir = at.cache;
      const gr::AttackRun run = gr::run_attack(cfg);
      std::fprintf(stderr, "AUC (%s) %.4f, predicted fake %zu, precision %.4f, recall %.4f\n",
                   std::string(gr::metric_name(cfg.attack.metric)).c_str(), run.report.auc.at(cfg.attack.metric),
                   run.report.predicted_fake, run.report.map.precision, run.report.map.recall);
    } else if (*generate) {
      gr::Graph g;
      if (gen.kind == "social") {
        gr::SocialGraphParams p;
        p.nodes = gen.nodes;
        g = gr::social_graph(p, seed);
      } else if (gen.kind == "er") {
        g = gr::erdos_renyi(gen.nodes, gen.p, seed);
      } else {
        throw std::invalid_argument("unknown graph kind '" + gen.kind + "'");
      }
      gr::save_edge_list(gen.output, g);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "graphrec: %s\n", e.what());
    return 1;
  }
  return 0;
}
