#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "graphrec/graph.hpp"

namespace graphrec {

/// Unordered degree pair, first <= second.
struct DegreePair {
  std::size_t low = 0;
  std::size_t high = 0;

  DegreePair() = default;
  DegreePair(std::size_t a, std::size_t b) : low(a < b ? a : b), high(a < b ? b : a) {}
  friend auto operator<=>(const DegreePair&, const DegreePair&) = default;
};

/// Joint degree distribution: number of edges per endpoint-degree pair.
struct DK2Series {
  std::map<DegreePair, std::int64_t> cells;

  [[nodiscard]] std::int64_t total() const;
  [[nodiscard]] std::int64_t at(DegreePair key) const {
    auto it = cells.find(key);
    return it == cells.end() ? 0 : it->second;
  }
  friend bool operator==(const DK2Series&, const DK2Series&) = default;
};

DK2Series dk2_series(const Graph& g);

}  // namespace graphrec
