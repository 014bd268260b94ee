#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "graphrec/embed.hpp"

namespace graphrec {

namespace {

static_assert(std::endian::native == std::endian::little, "binary embedding I/O assumes a little-endian host");

void write_text(std::ostream& out, const Embedding& emb) {
  out << emb.rows() << ' ' << emb.dimension() << '\n';
  std::array<char, 64> buf{};
  for (std::size_t u = 0; u < emb.rows(); ++u) {
    out << u;
    for (float x : emb.row(u)) {
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
      out << ' ';
      out.write(buf.data(), ptr - buf.data());
    }
    out << '\n';
  }
}

Embedding read_text(std::istream& in) {
  std::size_t rows = 0;
  std::size_t dim = 0;
  if (!(in >> rows >> dim)) throw std::runtime_error("embedding file: missing 'n d' header");
  Embedding emb(rows, dim);
  std::vector<bool> seen(rows, false);
  std::string line;
  std::getline(in, line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = p + line.size();
    std::size_t id = 0;
    auto res = std::from_chars(p, end, id);
    if (res.ec != std::errc() || id >= rows) {
      throw std::runtime_error("embedding file line " + std::to_string(line_no) + ": bad node id");
    }
    p = res.ptr;
    auto row = emb.row(id);
    for (std::size_t i = 0; i < dim; ++i) {
      while (p < end && *p == ' ') ++p;
      auto r = std::from_chars(p, end, row[i]);
      if (r.ec != std::errc()) {
        throw std::runtime_error("embedding file line " + std::to_string(line_no) + ": bad value");
      }
      p = r.ptr;
    }
    seen[id] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::runtime_error("embedding file: some nodes have no vector");
  }
  return emb;
}

}  // namespace

void save_embedding(const std::filesystem::path& path, const Embedding& emb, EmbeddingFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write embedding " + path.string());
  if (format == EmbeddingFormat::text) {
    write_text(out, emb);
    return;
  }
  const std::uint64_t header[2] = {emb.rows(), emb.dimension()};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  out.write(reinterpret_cast<const char*>(emb.data().data()),
            static_cast<std::streamsize>(emb.data().size() * sizeof(float)));
}

Embedding load_embedding(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open embedding " + path.string());
  std::array<char, 16> head{};
  in.read(head.data(), head.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  const bool binary = got == head.size() && std::find(head.begin(), head.end(), '\0') != head.end();
  if (!binary) {
    in.clear();
    in.seekg(0);
    return read_text(in);
  }
  std::uint64_t header[2];
  std::memcpy(header, head.data(), sizeof(header));
  Embedding emb(header[0], header[1]);
  in.read(reinterpret_cast<char*>(emb.data().data()), static_cast<std::streamsize>(emb.data().size() * sizeof(float)));
  if (static_cast<std::size_t>(in.gcount()) != emb.data().size() * sizeof(float)) {
    throw std::runtime_error("embedding file " + path.string() + " is truncated");
  }
  return emb;
}

}  // namespace graphrec
