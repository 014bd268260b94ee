#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "graphrec/recover.hpp"
#include "graphrec/rng.hpp"

namespace graphrec {

Posterior posterior(double score, const GmmParams& params) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const double lo = params.w0 > 0.0 ? std::log(params.w0) + normal_log_pdf(score, params.mu0, params.sigma0) : kNegInf;
  const double lf = params.w1 > 0.0 ? std::log(params.w1) + normal_log_pdf(score, params.mu1, params.sigma1) : kNegInf;
  Posterior p;
  if (lf == kNegInf) {
    p = {1.0, 0.0, false};
  } else if (lo == kNegInf) {
    p = {0.0, 1.0, true};
  } else {
    // logistic of the log-odds keeps both tails accurate
    const double log_odds = lf - lo;
    p.p_fake = 1.0 / (1.0 + std::exp(-log_odds));
    p.p_original = 1.0 / (1.0 + std::exp(log_odds));
    p.fake = log_odds > 0.0;
  }
  return p;
}

std::vector<Edge> PosteriorTable::predicted_fake() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].fake) out.emplace_back(edges[i].u, edges[i].v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PosteriorTable map_classify(const EdgeScores& scores, const GmmParams& params) {
  params.validate();
  PosteriorTable table;
  table.edges = scores.records;
  table.rows.reserve(scores.records.size());
  for (const EdgeScore& r : scores.records) table.rows.push_back(posterior(r.score, params));
  return table;
}

Graph recover_graph(const Graph& ga, const PosteriorTable& table) {
  if (table.edges.size() != ga.edge_count()) {
    throw std::invalid_argument("posterior table covers " + std::to_string(table.edges.size()) + " edges but the graph has " +
                                std::to_string(ga.edge_count()));
  }
  std::vector<Edge> covered;
  covered.reserve(table.edges.size());
  for (const EdgeScore& r : table.edges) covered.emplace_back(r.u, r.v);
  std::sort(covered.begin(), covered.end());
  if (!std::equal(covered.begin(), covered.end(), ga.edges().begin(), ga.edges().end())) {
    throw std::invalid_argument("posterior table does not cover exactly the edges of the graph");
  }
  GraphBuilder builder(ga);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].fake) builder.remove_edge(table.edges[i].u, table.edges[i].v);
  }
  return builder.build();
}

std::vector<Edge> baseline_random(const Graph& ga, std::size_t n_fake, std::uint64_t seed) {
  if (n_fake > ga.edge_count()) throw std::invalid_argument("cannot sample more edges than the graph has");
  Rng rng = make_rng(seed, 0x62617365);
  std::vector<Edge> out;
  out.reserve(n_fake);
  std::sample(ga.edges().begin(), ga.edges().end(), std::back_inserter(out), n_fake, rng);
  std::sort(out.begin(), out.end());
  return out;
}

std::string gmm_fit_to_json(const GmmFit& fit) {
  nlohmann::ordered_json j;
  j["w0"] = fit.params.w0;
  j["mu0"] = fit.params.mu0;
  j["sigma0"] = fit.params.sigma0;
  j["w1"] = fit.params.w1;
  j["mu1"] = fit.params.mu1;
  j["sigma1"] = fit.params.sigma1;
  j["loglik"] = fit.loglik;
  j["iterations"] = fit.iterations;
  j["converged"] = fit.converged;
  return j.dump(2);
}

GmmFit gmm_fit_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  GmmFit fit;
  fit.params = {j.at("w0").get<double>(), j.at("mu0").get<double>(), j.at("sigma0").get<double>(),
                j.at("w1").get<double>(), j.at("mu1").get<double>(), j.at("sigma1").get<double>()};
  fit.loglik = j.value("loglik", 0.0);
  fit.iterations = j.value("iterations", std::size_t{0});
  fit.converged = j.value("converged", false);
  fit.params.validate();
  return fit;
}

void write_posterior_csv(std::ostream& out, const PosteriorTable& table) {
  out << "u,v,score,p_original,p_fake,label\n";
  std::array<char, 64> buf{};
  auto put = [&](double x) {
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    out.write(buf.data(), ptr - buf.data());
  };
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const EdgeScore& e = table.edges[i];
    const Posterior& p = table.rows[i];
    out << e.u << ',' << e.v << ',';
    put(e.score);
    out << ',';
    put(p.p_original);
    out << ',';
    put(p.p_fake);
    out << ',' << (p.fake ? "fake" : "original") << '\n';
  }
}

PosteriorTable read_posterior_csv(std::istream& in) {
  PosteriorTable table;
  std::string line;
  if (!std::getline(in, line) || line.rfind("u,v,score,p_original,p_fake,label", 0) != 0) {
    throw std::runtime_error("posterior CSV: missing header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto bad = [&] { return std::runtime_error("posterior CSV line " + std::to_string(line_no) + " is malformed"); };
    const char* p = line.data();
    const char* end = p + line.size();
    EdgeScore e;
    Posterior post;
    auto expect_comma = [&](const char* q) {
      if (q == end || *q != ',') throw bad();
      return q + 1;
    };
    auto r1 = std::from_chars(p, end, e.u);
    if (r1.ec != std::errc()) throw bad();
    auto r2 = std::from_chars(expect_comma(r1.ptr), end, e.v);
    if (r2.ec != std::errc()) throw bad();
    auto r3 = std::from_chars(expect_comma(r2.ptr), end, e.score);
    if (r3.ec != std::errc()) throw bad();
    auto r4 = std::from_chars(expect_comma(r3.ptr), end, post.p_original);
    if (r4.ec != std::errc()) throw bad();
    auto r5 = std::from_chars(expect_comma(r4.ptr), end, post.p_fake);
    if (r5.ec != std::errc()) throw bad();
    const std::string_view label(expect_comma(r5.ptr), static_cast<std::size_t>(end - r5.ptr - 1));
    if (label == "fake") {
      post.fake = true;
    } else if (label != "original") {
      throw bad();
    }
    table.edges.push_back(e);
    table.rows.push_back(post);
  }
  return table;
}

}  // namespace graphrec
