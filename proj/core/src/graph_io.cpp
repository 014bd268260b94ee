#include "graphrec/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>

namespace graphrec {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t b = 0;
  while (b < rest.size() && is_space(rest[b])) ++b;
  std::size_t e = b;
  while (e < rest.size() && !is_space(rest[e])) ++e;
  std::string_view tok = rest.substr(b, e - b);
  rest.remove_prefix(e);
  return tok;
}

std::uint64_t parse_id(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("malformed node id '" + std::string(tok) + "'", line);
  }
  return value;
}

// "# nodes N"
bool parse_node_header(std::string_view line, std::size_t& nodes) {
  line.remove_prefix(1);
  std::string_view rest = line;
  if (next_token(rest) != "nodes") return false;
  std::string_view count = next_token(rest);
  if (count.empty() || !next_token(rest).empty()) return false;
  auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), nodes);
  return ec == std::errc() && ptr == count.data() + count.size();
}

}  // namespace

LoadedGraph read_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::vector<std::uint64_t> loop_ids;
  std::size_t declared_nodes = 0;
  bool has_header = false;
  std::size_t self_loops = 0;

  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    std::string_view line(buffer);
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    line.remove_prefix(first);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!has_header && raw.empty() && parse_node_header(line, declared_nodes)) has_header = true;
      continue;
    }
    std::string_view rest = line;
    std::string_view a = next_token(rest);
    std::string_view b = next_token(rest);
    if (b.empty()) throw ParseError("expected two node ids", line_no);
    if (!next_token(rest).empty()) throw ParseError("trailing tokens after edge", line_no);
    const std::uint64_t u = parse_id(a, line_no);
    const std::uint64_t v = parse_id(b, line_no);
    if (u == v) {
      ++self_loops;
      loop_ids.push_back(u);
      continue;
    }
    raw.emplace_back(u, v);
  }
  if (raw.empty() && !has_header) throw GraphError("edge list contains no edges");

  LoadedGraph out;
  out.self_loops_dropped = self_loops;

  std::size_t n = 0;
  if (has_header) {
    n = declared_nodes;
    out.original_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.original_ids[i] = i;
    for (const auto& [u, v] : raw) {
      if (u >= n || v >= n) throw GraphError("node id exceeds declared node count " + std::to_string(n));
    }
  } else {
    std::vector<std::uint64_t>& ids = out.original_ids;
    ids.reserve(raw.size() * 2 + loop_ids.size());
    for (const auto& [u, v] : raw) {
      ids.push_back(u);
      ids.push_back(v);
    }
    ids.insert(ids.end(), loop_ids.begin(), loop_ids.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    n = ids.size();
    if (n > std::numeric_limits<NodeId>::max()) throw GraphError("too many nodes");
  }

  auto dense = [&](std::uint64_t id) -> NodeId {
    if (has_header) return static_cast<NodeId>(id);
    auto it = std::lower_bound(out.original_ids.begin(), out.original_ids.end(), id);
    return static_cast<NodeId>(it - out.original_ids.begin());
  };

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) edges.emplace_back(dense(u), dense(v));
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  out.duplicates_collapsed = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());

  out.graph = Graph(n, std::move(edges));
  return out;
}

LoadedGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open edge list " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write edge list " + path.string());
  write_edge_list(out, g);
}

void save_id_map(const std::filesystem::path& path, const std::vector<std::uint64_t>& original_ids) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write id map " + path.string());
  for (std::size_t i = 0; i < original_ids.size(); ++i) out << i << ' ' << original_ids[i] << '\n';
}

}  // namespace graphrec
