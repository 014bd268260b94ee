#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "graphrec/anonymize.hpp"

namespace graphrec {

KAnonymousSequence kda_sequence(std::span<const std::size_t> degrees, std::size_t k) {
  const std::size_t n = degrees.size();
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (k > n) throw std::invalid_argument("k = " + std::to_string(k) + " exceeds node count " + std::to_string(n));

  KAnonymousSequence seq;
  seq.order.resize(n);
  std::iota(seq.order.begin(), seq.order.end(), NodeId{0});
  std::stable_sort(seq.order.begin(), seq.order.end(),
                   [&](NodeId a, NodeId b) { return degrees[a] > degrees[b]; });

  std::vector<std::size_t> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = degrees[seq.order[i]];
  std::vector<std::size_t> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sorted[i];

  // cost of lifting sorted[begin, end) to sorted[begin]
  auto group_cost = [&](std::size_t begin, std::size_t end) {
    return (end - begin) * sorted[begin] - (prefix[end] - prefix[begin]);
  };

  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(n + 1, kInf);
  std::vector<std::size_t> split(n + 1, 0);
  best[0] = 0;
  for (std::size_t end = k; end <= n; ++end) {
    const std::size_t max_size = std::min(end, 2 * k - 1);
    for (std::size_t size = k; size <= max_size; ++size) {
      const std::size_t begin = end - size;
      if (best[begin] == kInf) continue;
      const std::size_t c = best[begin] + group_cost(begin, end);
      if (c < best[end]) {
        best[end] = c;
        split[end] = begin;
      }
    }
  }
  if (best[n] == kInf) throw std::logic_error("no k-anonymous grouping found");

  for (std::size_t end = n; end > 0; end = split[end]) seq.groups.push_back({split[end], end, sorted[split[end]]});
  std::reverse(seq.groups.begin(), seq.groups.end());

  seq.targets.assign(n, 0);
  for (const DegreeGroup& grp : seq.groups) {
    for (std::size_t i = grp.begin; i < grp.end; ++i) seq.targets[seq.order[i]] = grp.value;
  }
  seq.cost = best[n];
  return seq;
}

std::vector<std::size_t> kda_degree_sequence(std::span<const std::size_t> degrees, std::size_t k) {
  return kda_sequence(degrees, k).targets;
}

bool make_degree_sum_even(KAnonymousSequence& seq, std::size_t node_count) {
  const std::size_t sum = std::accumulate(seq.targets.begin(), seq.targets.end(), std::size_t{0});
  if (sum % 2 == 0) return false;

  // An odd sum implies at least one odd-sized group.
  DegreeGroup* pick = nullptr;
  for (DegreeGroup& grp : seq.groups) {
    const std::size_t size = grp.end - grp.begin;
    if (size % 2 == 0 || grp.value + 1 >= node_count) continue;
    if (pick == nullptr) {
      pick = &grp;
      continue;
    }
    const std::size_t best_size = pick->end - pick->begin;
    if (size < best_size || (size == best_size && grp.value < pick->value)) pick = &grp;
  }
  if (pick == nullptr) throw std::runtime_error("cannot make the degree sum even without exceeding n-1");

  DegreeGroup& grp = *pick;
  ++grp.value;
  for (std::size_t i = grp.begin; i < grp.end; ++i) ++seq.targets[seq.order[i]];
  seq.cost += grp.end - grp.begin;
  return true;
}

KdaResult realize_degree_targets(const Graph& g, std::span<const std::size_t> targets, Rng& rng,
                                 const PartnerChooser& chooser) {
  const std::size_t n = g.node_count();
  if (targets.size() != n) throw std::invalid_argument("target sequence length differs from node count");

  GraphBuilder builder(g);
  std::vector<std::size_t> residual(n, 0);
  // Ordered by residual descending, then id ascending.
  auto cmp = [](const std::pair<std::size_t, NodeId>& a, const std::pair<std::size_t, NodeId>& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  std::set<std::pair<std::size_t, NodeId>, decltype(cmp)> queue(cmp);

  for (std::size_t u = 0; u < n; ++u) {
    if (targets[u] < g.degree(static_cast<NodeId>(u))) {
      throw std::invalid_argument("target degree below current degree for node " + std::to_string(u));
    }
    if (targets[u] >= n) throw std::invalid_argument("target degree exceeds n-1 for node " + std::to_string(u));
    residual[u] = targets[u] - g.degree(static_cast<NodeId>(u));
    if (residual[u] > 0) queue.emplace(residual[u], static_cast<NodeId>(u));
  }

  auto set_residual = [&](NodeId v, std::size_t r) {
    if (residual[v] > 0) queue.erase({residual[v], v});
    residual[v] = r;
    if (r > 0) queue.emplace(r, v);
  };

  KdaResult result;
  const std::size_t budget = 10 * std::max<std::size_t>(g.edge_count(), 1);
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t epoch = 0;
  std::vector<NodeId> candidates;
  std::vector<NodeId> partners;

  auto residual_sum = [&] { return std::accumulate(residual.begin(), residual.end(), std::size_t{0}); };

  // after a relaxation u keeps the turn, else the freed pair just relinks
  std::optional<NodeId> pending;
  while (!queue.empty()) {
    const NodeId u = pending ? *pending : queue.begin()->second;
    pending.reset();
    const std::size_t need = residual[u];
    ++epoch;
    mark[u] = epoch;
    for (NodeId v : builder.neighbors(u)) mark[v] = epoch;

    partners.clear();
    if (!chooser) {
      for (const auto& [r, v] : queue) {
        if (partners.size() == need) break;
        if (mark[v] != epoch) partners.push_back(v);
      }
    } else {
      candidates.clear();
      for (const auto& [r, v] : queue) {
        if (mark[v] != epoch) candidates.push_back(v);
      }
      partners = chooser(u, candidates, need, rng);
      if (partners.size() > need) throw std::logic_error("partner chooser returned too many partners");
    }

    for (NodeId v : partners) {
      if (mark[v] == epoch || residual[v] == 0) throw std::logic_error("partner chooser returned an ineligible node");
      mark[v] = epoch;
      builder.add_edge(u, v);
      ++result.edges_added;
      set_residual(v, residual[v] - 1);
      set_residual(u, residual[u] - 1);
    }
    if (residual[u] == 0) continue;

    // Relaxation: free up two zero-residual nodes u is not adjacent to.
    bool relaxed = false;
    while (!relaxed) {
      if (result.relaxation_draws >= budget || builder.edge_count() == 0) {
        throw RealizationError("k-DA realization exhausted its retry budget", result.edges_added,
                               result.edges_deleted, residual_sum());
      }
      ++result.relaxation_draws;
      const Edge e = builder.edge_at(uniform_index(rng, builder.edge_count()));
      if (residual[e.u] != 0 || residual[e.v] != 0 || mark[e.u] == epoch || mark[e.v] == epoch) continue;
      builder.remove_edge(e.u, e.v);
      ++result.edges_deleted;
      set_residual(e.u, 1);
      set_residual(e.v, 1);
      relaxed = true;
    }
    pending = u;
  }

  result.graph = builder.build();
  result.targets.assign(targets.begin(), targets.end());
  return result;
}

KdaResult kda_anonymize(const Graph& g, const KdaConfig& cfg, const PartnerChooser& chooser) {
  const std::vector<std::size_t> degrees = g.degrees();
  KAnonymousSequence seq = kda_sequence(degrees, cfg.k);
  const bool adjusted = make_degree_sum_even(seq, g.node_count());
  Rng rng = make_rng(cfg.seed, 0x6b6461);
  KdaResult result = realize_degree_targets(g, seq.targets, rng, chooser);
  result.sequence_cost = seq.cost;
  result.parity_adjusted = adjusted;
  return result;
}

}  // namespace graphrec
