#include "graphrec/plausibility.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace graphrec {

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::cosine: return "cosine";
    case Metric::euclidean: return "euclidean";
    case Metric::bray_curtis: return "bray_curtis";
    case Metric::embeddedness: return "embeddedness";
    case Metric::jaccard: return "jaccard";
    case Metric::adamic_adar: return "adamic_adar";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (metric_name(m) == name) return m;
  }
  if (name == "bray-curtis") return Metric::bray_curtis;
  if (name == "adamic-adar") return Metric::adamic_adar;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

bool uses_embedding(Metric m) {
  return m == Metric::cosine || m == Metric::euclidean || m == Metric::bray_curtis;
}

namespace {
void check_dims(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw MetricError("vector dimensions differ");
}
}  // namespace

double cosine(std::span<const float> a, std::span<const float> b) {
  check_dims(a, b);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<double>(a[i]) * b[i];
    aa += static_cast<double>(a[i]) * a[i];
    bb += static_cast<double>(b[i]) * b[i];
  }
  if (aa == 0.0 || bb == 0.0) throw MetricError("cosine similarity of a zero-norm vector");
  return std::clamp(ab / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

double euclidean(std::span<const float> a, std::span<const float> b) {
  check_dims(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = static_cast<double>(a[i]) - b[i];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double bray_curtis(std::span<const float> a, std::span<const float> b) {
  check_dims(a, b);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::abs(static_cast<double>(a[i]) - b[i]);
    den += std::abs(static_cast<double>(a[i]) + b[i]);
  }
  if (den == 0.0) throw MetricError("Bray-Curtis distance with zero denominator");
  return num / den;
}

StructuralScores structural_baselines(const Graph& g, Edge edge) {
  auto a = g.neighbors(edge.u);
  auto b = g.neighbors(edge.v);
  StructuralScores out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      const std::size_t deg = g.degree(a[i]);
      // a common neighbor of two distinct nodes has degree >= 2
      assert(deg >= 2);
      ++out.embeddedness;
      out.adamic_adar += 1.0 / std::log(static_cast<double>(deg));
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - out.embeddedness;
  out.jaccard = uni == 0 ? 0.0 : static_cast<double>(out.embeddedness) / static_cast<double>(uni);
  return out;
}

double embedding_score(const Embedding& emb, Metric metric, NodeId u, NodeId v) {
  for (NodeId x : {u, v}) {
    if (x >= emb.rows()) throw std::out_of_range("embedding has no vector for node " + std::to_string(x));
  }
  switch (metric) {
    case Metric::cosine: return cosine(emb.row(u), emb.row(v));
    case Metric::euclidean: return -euclidean(emb.row(u), emb.row(v));
    case Metric::bray_curtis: return -bray_curtis(emb.row(u), emb.row(v));
    default: throw std::invalid_argument("metric '" + std::string(metric_name(metric)) + "' is not an embedding metric");
  }
}

double pair_score(const Graph& g, const Embedding* emb, Metric metric, NodeId u, NodeId v) {
  if (uses_embedding(metric)) {
    if (emb == nullptr) throw std::invalid_argument("metric '" + std::string(metric_name(metric)) + "' needs an embedding");
    return embedding_score(*emb, metric, u, v);
  }
  const StructuralScores s = structural_baselines(g, Edge(u, v));
  switch (metric) {
    case Metric::embeddedness: return static_cast<double>(s.embeddedness);
    case Metric::jaccard: return s.jaccard;
    default: return s.adamic_adar;
  }
}

std::vector<double> EdgeScores::values() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const EdgeScore& r : records) out.push_back(r.score);
  return out;
}

EdgeScores score_edges(const Graph& g, const Embedding* emb, Metric metric) {
  EdgeScores out;
  out.metric = metric;
  out.records.reserve(g.edge_count());
  for (const Edge& e : g.edges()) out.records.push_back({e.u, e.v, pair_score(g, emb, metric, e.u, e.v)});
  return out;
}

void write_scores_csv(std::ostream& out, const EdgeScores& scores) {
  out << "u,v,score,metric\n";
  std::array<char, 64> buf{};
  const std::string_view name = metric_name(scores.metric);
  for (const EdgeScore& r : scores.records) {
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), r.score);
    out << r.u << ',' << r.v << ',';
    out.write(buf.data(), ptr - buf.data());
    out << ',' << name << '\n';
  }
}

EdgeScores read_scores_csv(std::istream& in) {
  EdgeScores out;
  std::string line;
  if (!std::getline(in, line) || line.rfind("u,v,score", 0) != 0) {
    throw std::runtime_error("scores CSV: missing 'u,v,score,metric' header");
  }
  std::size_t line_no = 1;
  bool metric_set = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = p + line.size();
    EdgeScore r;
    auto bad = [&] { return std::runtime_error("scores CSV line " + std::to_string(line_no) + " is malformed"); };
    auto res = std::from_chars(p, end, r.u);
    if (res.ec != std::errc() || res.ptr == end || *res.ptr != ',') throw bad();
    res = std::from_chars(res.ptr + 1, end, r.v);
    if (res.ec != std::errc() || res.ptr == end || *res.ptr != ',') throw bad();
    auto res_d = std::from_chars(res.ptr + 1, end, r.score);
    if (res_d.ec != std::errc()) throw bad();
    if (res_d.ptr != end && *res_d.ptr == ',') {
      const Metric m = parse_metric(std::string_view(res_d.ptr + 1, static_cast<std::size_t>(end - res_d.ptr - 1)));
      if (metric_set && m != out.metric) throw std::runtime_error("scores CSV mixes metrics");
      out.metric = m;
      metric_set = true;
    }
    if (r.u > r.v) std::swap(r.u, r.v);
    out.records.push_back(r);
  }
  std::sort(out.records.begin(), out.records.end(),
            [](const EdgeScore& a, const EdgeScore& b) { return Edge(a.u, a.v) < Edge(b.u, b.v); });
  return out;
}

void save_scores_csv(const std::filesystem::path& path, const EdgeScores& scores) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_scores_csv(out, scores);
}

EdgeScores load_scores_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_scores_csv(in);
}

}  // namespace graphrec
