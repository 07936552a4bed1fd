#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "effres/errors.hpp"
#include "effres/graph.hpp"

namespace effres {

struct LoadOptions {
  bool largest_component = true;
  bool keep_multi = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline bool next_token(std::string_view& rest, std::string_view& token) {
  const auto first = rest.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return false;
  rest.remove_prefix(first);
  const auto end = rest.find_first_of(" \t\r");
  token = rest.substr(0, end);
  rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
  return true;
}

inline RawId parse_id(std::string_view token, std::size_t line) {
  RawId value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("expected an integer vertex id, got '" + std::string(token) + "'", line);
  return value;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Reads a SNAP-style edge list: '#' starts a comment line, every other
/// non-blank line holds two integer vertex ids (extra columns are ignored).
///
/// Raw ids are remapped to 0..n-1 in increasing raw-id order. With
/// `largest_component`, only the largest connected component survives; ties
/// go to the component containing the smallest raw id.
inline Graph load_edge_list(std::istream& in, const LoadOptions& options = {}) {
  std::vector<std::pair<RawId, RawId>> raw_edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = detail::trim(line);
    if (rest.empty() || rest.front() == '#') continue;
    std::string_view a, b;
    if (!detail::next_token(rest, a) || !detail::next_token(rest, b))
      throw ParseError("expected two vertex ids", line_no);
    raw_edges.emplace_back(detail::parse_id(a, line_no), detail::parse_id(b, line_no));
  }
  if (raw_edges.empty()) throw ParseError("edge list contains no edges", 0);

  std::vector<RawId> ids;
  ids.reserve(raw_edges.size() * 2);
  for (auto [u, v] : raw_edges) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](RawId raw) {
    return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), raw) - ids.begin());
  };
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(raw_edges.size());
  for (auto [u, v] : raw_edges) edges.emplace_back(dense(u), dense(v));
  raw_edges.clear();
  raw_edges.shrink_to_fit();

  if (options.largest_component) {
    detail::UnionFind uf(ids.size());
    for (auto [u, v] : edges)
      if (u != v) uf.unite(u, v);
    // Roots are the smallest member, and dense order follows raw order, so
    // scanning roots in increasing order implements the tie-break.
    std::vector<std::uint64_t> size(ids.size(), 0);
    for (Vertex v = 0; v < ids.size(); ++v) ++size[uf.find(v)];
    Vertex best = 0;
    for (Vertex v = 0; v < ids.size(); ++v)
      if (size[v] > size[best]) best = v;
    std::vector<Vertex> remap(ids.size(), ~Vertex{0});
    std::vector<RawId> kept_ids;
    for (Vertex v = 0; v < ids.size(); ++v)
      if (uf.find(v) == best) {
        remap[v] = static_cast<Vertex>(kept_ids.size());
        kept_ids.push_back(ids[v]);
      }
    std::vector<std::pair<Vertex, Vertex>> kept;
    kept.reserve(edges.size());
    for (auto [u, v] : edges)
      if (remap[u] != ~Vertex{0}) kept.emplace_back(remap[u], remap[v]);
    edges = std::move(kept);
    ids = std::move(kept_ids);
  }

  const std::size_t n = ids.size();
  Graph g = Graph::from_edges(n, edges, options.keep_multi, std::move(ids));
  if (g.edge_count() == 0) throw ParseError("graph has no edges after removing self-loops", 0);
  return g;
}

inline Graph load_edge_list_file(const std::string& path, const LoadOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path + "'");
  return load_edge_list(in, options);
}

// Binary cache, version 1, little-endian:
//   "RSTG1" | u64 n | u64 m | u64 offsets[n+1] | u32 targets[2m] | i64 original_ids[n]
inline constexpr std::array<char, 5> kCacheMagic{'R', 'S', 'T', 'G', '1'};

namespace detail {

template <class T>
void put_le(std::ostream& out, T value) {
  using U = std::make_unsigned_t<T>;
  auto u = static_cast<U>(value);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((u >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  using U = std::make_unsigned_t<T>;
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
    throw ParseError("graph cache truncated", 0);
  U u = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(bytes[i]) << (8 * i);
  return static_cast<T>(u);
}

}  // namespace detail

inline void write_graph_cache(std::ostream& out, const Graph& g) {
  out.write(kCacheMagic.data(), kCacheMagic.size());
  detail::put_le<std::uint64_t>(out, g.vertex_count());
  detail::put_le<std::uint64_t>(out, g.edge_count());
  for (auto off : g.offsets()) detail::put_le<std::uint64_t>(out, off);
  for (auto v : g.targets()) detail::put_le<std::uint32_t>(out, v);
  for (auto id : g.original_ids()) detail::put_le<std::int64_t>(out, id);
  if (!out) throw Error("failed writing graph cache");
}

inline Graph read_graph_cache(std::istream& in) {
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kCacheMagic)
    throw ParseError("not a graph cache (bad magic)", 0);
  const auto n = detail::get_le<std::uint64_t>(in);
  const auto m = detail::get_le<std::uint64_t>(in);
  if (n > (std::uint64_t{1} << 32)) throw ParseError("graph cache vertex count too large", 0);
  std::vector<std::uint64_t> offsets(n + 1);
  for (auto& off : offsets) off = detail::get_le<std::uint64_t>(in);
  if (offsets.back() != 2 * m) throw ParseError("graph cache edge count mismatch", 0);
  std::vector<Vertex> targets(2 * m);
  for (auto& v : targets) v = detail::get_le<std::uint32_t>(in);
  std::vector<RawId> ids(n);
  for (auto& id : ids) id = detail::get_le<std::int64_t>(in);
  return Graph::from_csr(std::move(offsets), std::move(targets), std::move(ids));
}

/// Loads either a graph cache (detected by its magic) or a SNAP edge list.
inline Graph load_graph_file(const std::string& path, const LoadOptions& options = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open graph file '" + path + "'");
  std::array<char, 5> head{};
  in.read(head.data(), head.size());
  const bool is_cache = in.gcount() == 5 && head == kCacheMagic;
  in.clear();
  in.seekg(0);
  return is_cache ? read_graph_cache(in) : load_edge_list(in, options);
}

}  // namespace effres
