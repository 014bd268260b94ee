#include <cmath>
#include <cstdlib>
#include <map>

#include "graphrec/dk2.hpp"
#include "graphrec/metrics.hpp"

namespace graphrec {

double degree_difference(const Graph& g, const Graph& other) {
  if (g.node_count() != other.node_count()) {
    throw std::invalid_argument("degree difference needs graphs on the same node universe");
  }
  if (g.node_count() == 0) return 0.0;
  double total = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    total += std::abs(static_cast<double>(g.degree(u)) - static_cast<double>(other.degree(u)));
  }
  return total / static_cast<double>(g.node_count());
}

NoiseStats dk2_noise_stats(const Graph& g, std::span<const Graph> samples) {
  if (samples.empty()) throw std::invalid_argument("noise statistics need at least one sample");
  const DK2Series base = dk2_series(g);
  std::vector<DK2Series> series;
  series.reserve(samples.size());
  for (const Graph& s : samples) {
    if (s.node_count() != g.node_count()) throw std::invalid_argument("sample node universe differs");
    series.push_back(dk2_series(s));
  }

  std::map<DegreePair, std::vector<std::int64_t>> noise;
  for (const auto& [cell, count] : base.cells) noise[cell];
  for (auto& [cell, values] : noise) {
    const std::int64_t r0 = base.at(cell);
    values.reserve(series.size());
    for (const DK2Series& s : series) values.push_back(s.at(cell) - r0);
  }

  NoiseStats out;
  if (noise.empty()) return out;
  const double m = static_cast<double>(series.size());
  for (const auto& [cell, values] : noise) {
    double abs_sum = 0.0;
    std::map<std::int64_t, std::size_t> freq;
    for (std::int64_t v : values) {
      abs_sum += static_cast<double>(std::llabs(v));
      ++freq[v];
    }
    out.zeta += abs_sum / m;
    double h = 0.0;
    for (const auto& [value, c] : freq) {
      const double p = static_cast<double>(c) / m;
      h -= p * std::log2(p);
    }
    out.entropy += h;
  }
  out.zeta /= static_cast<double>(noise.size());
  out.entropy /= static_cast<double>(noise.size());
  return out;
}

}  // namespace graphrec
