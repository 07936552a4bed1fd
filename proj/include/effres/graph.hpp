#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "effres/errors.hpp"
#include "effres/rng.hpp"

namespace effres {

using Vertex = std::uint32_t;
using RawId = std::int64_t;

/// Query counts for the adjacency-list access model.
struct AccessStats {
  std::uint64_t degree_queries = 0;
  std::uint64_t neighbor_queries = 0;
  std::uint64_t vertex_samples = 0;

  std::uint64_t total() const noexcept { return degree_queries + neighbor_queries + vertex_samples; }

  AccessStats& operator+=(const AccessStats& o) noexcept {
    degree_queries += o.degree_queries;
    neighbor_queries += o.neighbor_queries;
    vertex_samples += o.vertex_samples;
    return *this;
  }
  friend AccessStats operator+(AccessStats a, const AccessStats& b) noexcept { return a += b; }
  friend AccessStats operator-(const AccessStats& a, const AccessStats& b) noexcept {
    return {a.degree_queries - b.degree_queries, a.neighbor_queries - b.neighbor_queries,
            a.vertex_samples - b.vertex_samples};
  }
  friend bool operator==(const AccessStats&, const AccessStats&) = default;
};

namespace detail {

// Relaxed atomics: totals are exact once all readers have quiesced.
class AtomicAccessCounter {
 public:
  AtomicAccessCounter() = default;
  AtomicAccessCounter(const AtomicAccessCounter& other) noexcept { store(other.load()); }
  AtomicAccessCounter& operator=(const AtomicAccessCounter& other) noexcept {
    store(other.load());
    return *this;
  }

  void degree() const noexcept { degree_.fetch_add(1, std::memory_order_relaxed); }
  void neighbor() const noexcept { neighbor_.fetch_add(1, std::memory_order_relaxed); }
  void sample() const noexcept { sample_.fetch_add(1, std::memory_order_relaxed); }

  AccessStats load() const noexcept {
    return {degree_.load(std::memory_order_relaxed), neighbor_.load(std::memory_order_relaxed),
            sample_.load(std::memory_order_relaxed)};
  }
  void store(const AccessStats& s) const noexcept {
    degree_.store(s.degree_queries, std::memory_order_relaxed);
    neighbor_.store(s.neighbor_queries, std::memory_order_relaxed);
    sample_.store(s.vertex_samples, std::memory_order_relaxed);
  }

 private:
  mutable std::atomic<std::uint64_t> degree_{0};
  mutable std::atomic<std::uint64_t> neighbor_{0};
  mutable std::atomic<std::uint64_t> sample_{0};
};

}  // namespace detail

/// Immutable undirected multigraph in CSR form.
///
/// Each vertex stores its sorted neighbor multiset; a parallel edge shows up
/// as a repeated entry and self-loops never appear. `degree`, `neighbor` and
/// `sample_vertex` are the counted queries of the adjacency-list model;
/// `adjacency` is uncounted and reserved for oracles and I/O.
class Graph {
 public:
  Graph() = default;

  /// Builds from an undirected edge list over vertices 0..n-1. Self-loops are
  /// dropped; duplicate edges are dropped unless keep_multi is set.
  static Graph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                          bool keep_multi = true, std::vector<RawId> original_ids = {}) {
    std::vector<std::uint64_t> degree(n + 1, 0);
    std::vector<std::pair<Vertex, Vertex>> kept;
    kept.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) throw QueryError("edge endpoint out of range");
      if (u == v) continue;
      kept.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!keep_multi) {
      std::sort(kept.begin(), kept.end());
      kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    }
    for (auto [u, v] : kept) {
      ++degree[u];
      ++degree[v];
    }
    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + degree[v];
    std::vector<Vertex> targets(offsets[n]);
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (auto [u, v] : kept) {
      targets[cursor[u]++] = v;
      targets[cursor[v]++] = u;
    }
    return from_csr(std::move(offsets), std::move(targets), std::move(original_ids));
  }

  /// Adopts CSR arrays. Neighbor lists are sorted here; symmetry is checked.
  static Graph from_csr(std::vector<std::uint64_t> offsets, std::vector<Vertex> targets,
                        std::vector<RawId> original_ids = {}) {
    if (offsets.empty() || offsets.front() != 0 || offsets.back() != targets.size())
      throw ParseError("inconsistent CSR offsets", 0);
    Graph g;
    const std::size_t n = offsets.size() - 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (offsets[v] > offsets[v + 1]) throw ParseError("CSR offsets not monotone", 0);
      auto begin = targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
      auto end = targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
      std::sort(begin, end);
      for (auto it = begin; it != end; ++it) {
        if (*it >= n) throw ParseError("CSR target out of range", 0);
        if (*it == v) throw ParseError("self-loop in CSR data", 0);
      }
    }
    if (targets.size() % 2 != 0) throw ParseError("odd number of arc endpoints", 0);
    g.offsets_ = std::move(offsets);
    g.targets_ = std::move(targets);
    g.edge_count_ = g.targets_.size() / 2;
    if (original_ids.empty()) {
      original_ids.resize(n);
      std::iota(original_ids.begin(), original_ids.end(), RawId{0});
    }
    if (original_ids.size() != n) throw ParseError("original id map has wrong size", 0);
    g.original_ids_ = std::move(original_ids);
    g.check_symmetry();
    g.connected_ = g.compute_connected();
    return g;
  }

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::uint64_t edge_count() const noexcept { return edge_count_; }
  bool is_connected() const noexcept { return connected_; }

  /// Counted degree query.
  std::uint64_t degree(Vertex v) const {
    check_vertex(v);
    counter_.degree();
    return offsets_[v + 1] - offsets_[v];
  }

  /// Counted neighbor query: i-th entry (0-based) of v's sorted list.
  Vertex neighbor(Vertex v, std::uint64_t i) const {
    check_vertex(v);
    if (i >= offsets_[v + 1] - offsets_[v]) throw QueryError("neighbor index out of range");
    counter_.neighbor();
    return targets_[offsets_[v] + i];
  }

  /// Counted uniform vertex sample.
  Vertex sample_vertex(Rng& rng) const {
    if (vertex_count() == 0) throw QueryError("cannot sample from an empty graph");
    counter_.sample();
    return static_cast<Vertex>(rng.below(vertex_count()));
  }

  AccessStats access_stats() const noexcept { return counter_.load(); }
  void reset_access_stats() const noexcept { counter_.store({}); }

  // Uncounted access.
  std::span<const Vertex> adjacency(Vertex v) const {
    check_vertex(v);
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::uint64_t raw_degree(Vertex v) const { return adjacency(v).size(); }
  std::uint64_t multiplicity(Vertex u, Vertex v) const {
    auto adj = adjacency(u);
    auto [lo, hi] = std::equal_range(adj.begin(), adj.end(), v);
    return static_cast<std::uint64_t>(hi - lo);
  }
  RawId original_id(Vertex v) const {
    check_vertex(v);
    return original_ids_[v];
  }
  const std::vector<RawId>& original_ids() const noexcept { return original_ids_; }
  const std::vector<std::uint64_t>& offsets() const noexcept { return offsets_; }
  const std::vector<Vertex>& targets() const noexcept { return targets_; }

  /// Each undirected edge once, as (u, v) with u < v, in CSR order.
  std::vector<std::pair<Vertex, Vertex>> edge_list() const {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count(); ++u)
      for (Vertex v : adjacency(u))
        if (u < v) edges.emplace_back(u, v);
    return edges;
  }

  bool contains(Vertex v) const noexcept { return v < vertex_count(); }

 private:
  void check_vertex(Vertex v) const {
    if (v >= vertex_count()) throw QueryError("vertex " + std::to_string(v) + " out of range");
  }

  void check_symmetry() const {
    // Every arc u->v must be matched by an arc v->u with the same multiplicity.
    for (Vertex u = 0; u < vertex_count(); ++u) {
      auto adj = adjacency(u);
      for (std::size_t i = 0; i < adj.size();) {
        std::size_t j = i;
        while (j < adj.size() && adj[j] == adj[i]) ++j;
        if (multiplicity(adj[i], u) != j - i)
          throw ParseError("adjacency lists are not symmetric", 0);
        i = j;
      }
    }
  }

  bool compute_connected() const {
    const std::size_t n = vertex_count();
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : adjacency(u))
        if (!seen[v]) {
          seen[v] = 1;
          ++reached;
          stack.push_back(v);
        }
    }
    return reached == n;
  }

  std::vector<std::uint64_t> offsets_;
  std::vector<Vertex> targets_;
  std::vector<RawId> original_ids_;
  std::uint64_t edge_count_ = 0;
  bool connected_ = false;
  detail::AtomicAccessCounter counter_;
};

/// Identifies s and t. The merged vertex keeps s's slot (and original id);
/// ids above t shift down by one. Edges between s and t vanish; other
/// parallel edges created by the merge are kept.
inline Graph contract_pair(const Graph& g, Vertex s, Vertex t) {
  if (!g.contains(s) || !g.contains(t)) throw QueryError("contract_pair: vertex out of range");
  if (s == t) throw PreconditionError("contract_pair: s and t must differ");
  auto relabel = [&](Vertex v) -> Vertex {
    if (v == t) v = s;
    return v > t ? v - 1 : v;
  };
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(g.edge_count());
  for (auto [u, v] : g.edge_list()) {
    Vertex a = relabel(u);
    Vertex b = relabel(v);
    if (a != b) edges.emplace_back(a, b);
  }
  std::vector<RawId> ids;
  ids.reserve(g.vertex_count() - 1);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (v != t) ids.push_back(g.original_id(v));
  return Graph::from_edges(g.vertex_count() - 1, edges, /*keep_multi=*/true, std::move(ids));
}

}  // namespace effres
