#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphrec/graph.hpp"

namespace graphrec {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct LoadedGraph {
  Graph graph;
  /// original_ids[dense] = id as written in the input file
  std::vector<std::uint64_t> original_ids;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

/// Reads a whitespace-separated "u v" edge list. Lines starting with '#' are
/// comments, except the header "# nodes N" written by write_edge_list: when
/// present, ids are taken as already dense and the universe has N nodes
/// (keeping isolated nodes). Otherwise ids are relabeled to 0..n-1 in
/// ascending order of their original value.
LoadedGraph read_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::filesystem::path& path);

/// Writes "# nodes N" followed by sorted "u v" lines with u < v.
void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::filesystem::path& path, const Graph& g);

/// Two-column "dense original" sidecar.
void save_id_map(const std::filesystem::path& path, const std::vector<std::uint64_t>& original_ids);

}  // namespace graphrec
