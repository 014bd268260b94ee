#include "graphrec/dk2.hpp"

#include <numeric>

namespace graphrec {

std::int64_t DK2Series::total() const {
  return std::accumulate(cells.begin(), cells.end(), std::int64_t{0},
                         [](std::int64_t acc, const auto& kv) { return acc + kv.second; });
}

DK2Series dk2_series(const Graph& g) {
  DK2Series series;
  for (const Edge& e : g.edges()) ++series.cells[DegreePair(g.degree(e.u), g.degree(e.v))];
  return series;
}

}  // namespace graphrec
