#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "graphrec/metrics.hpp"

namespace graphrec {

namespace {

void check_inputs(std::span<const double> scores, const std::vector<bool>& labels, std::size_t& pos, std::size_t& neg) {
  if (scores.size() != labels.size()) throw std::invalid_argument("scores and labels differ in length");
  pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
  neg = labels.size() - pos;
  if (pos == 0) throw std::invalid_argument("ROC needs at least one fake edge");
  if (neg == 0) throw std::invalid_argument("ROC needs at least one original edge");
}

std::vector<std::size_t> ascending_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return order;
}

}  // namespace

double auc_rank_statistic(std::span<const double> plausibility, const std::vector<bool>& labels) {
  std::size_t pos = 0, neg = 0;
  check_inputs(plausibility, labels, pos, neg);
  const auto order = ascending_order(plausibility);
  // mid-ranks of the original edges in ascending plausibility
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t originals = 0;
    while (j < order.size() && plausibility[order[j]] == plausibility[order[i]]) {
      if (!labels[order[j]]) ++originals;
      ++j;
    }
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    rank_sum += mid * static_cast<double>(originals);
    i = j;
  }
  const double n = static_cast<double>(neg);
  return (rank_sum - n * (n + 1.0) / 2.0) / (n * static_cast<double>(pos));
}

double trapezoid_area(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2.0;
  }
  return area;
}

RocResult roc_curve(std::span<const double> plausibility, const std::vector<bool>& labels) {
  std::size_t pos = 0, neg = 0;
  check_inputs(plausibility, labels, pos, neg);
  const auto order = ascending_order(plausibility);
  RocResult out;
  out.points.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && plausibility[order[j]] == plausibility[order[i]]) {
      if (labels[order[j]]) {
        ++tp;
      } else {
        ++fp;
      }
      ++j;
    }
    out.points.push_back({static_cast<double>(fp) / static_cast<double>(neg), static_cast<double>(tp) / static_cast<double>(pos)});
    i = j;
  }
  out.auc = auc_rank_statistic(plausibility, labels);
  return out;
}

std::vector<bool> fake_labels(const EdgeScores& scores, const EdgeDiff& truth) {
  std::unordered_set<std::uint64_t> added;
  added.reserve(truth.added.size());
  for (const Edge& e : truth.added) added.insert(e.key());
  std::vector<bool> labels;
  labels.reserve(scores.records.size());
  for (const EdgeScore& r : scores.records) labels.push_back(added.contains(Edge(r.u, r.v).key()));
  return labels;
}

RocResult roc_auc(const EdgeScores& scores, const EdgeDiff& truth) {
  const auto values = scores.values();
  return roc_curve(values, fake_labels(scores, truth));
}

void write_roc_csv(std::ostream& out, const RocResult& roc) {
  out << "fpr,tpr\n";
  std::array<char, 64> buf{};
  for (const RocPoint& p : roc.points) {
    auto r1 = std::to_chars(buf.data(), buf.data() + buf.size(), p.fpr);
    out.write(buf.data(), r1.ptr - buf.data());
    out << ',';
    auto r2 = std::to_chars(buf.data(), buf.data() + buf.size(), p.tpr);
    out.write(buf.data(), r2.ptr - buf.data());
    out << '\n';
  }
}

PrecisionRecall precision_recall(std::span<const Edge> predicted, const EdgeDiff& truth) {
  if (predicted.empty()) throw std::invalid_argument("precision is undefined for an empty prediction");
  if (truth.added.empty()) throw std::invalid_argument("recall is undefined without added edges");
  std::unordered_set<std::uint64_t> added;
  added.reserve(truth.added.size());
  for (const Edge& e : truth.added) added.insert(e.key());
  std::size_t hits = 0;
  for (const Edge& e : predicted) hits += added.contains(Edge(e.u, e.v).key()) ? 1 : 0;
  return {static_cast<double>(hits) / static_cast<double>(predicted.size()),
          static_cast<double>(hits) / static_cast<double>(truth.added.size())};
}

}  // namespace graphrec
