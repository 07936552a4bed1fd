#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "effres/errors.hpp"
#include "effres/graph.hpp"
#include "effres/rng.hpp"

namespace effres::gen {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

inline Graph complete(std::size_t n) {
  EdgeList e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

inline Graph path(std::size_t n) {
  EdgeList e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

inline Graph cycle(std::size_t n) {
  EdgeList e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph::from_edges(n, e);
}

/// Center 0 joined to leaves 1..leaves.
inline Graph star(std::size_t leaves) {
  EdgeList e;
  for (Vertex v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

/// Five-cycle 0-1-2-3-4 plus the chord (0,2).
inline Graph cycle5_with_chord() {
  const EdgeList e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}};
  return Graph::from_edges(5, e);
}

/// Erdos-Renyi G(n, p) edge list by geometric skipping, O(n + m) expected.
inline EdgeList gnp_edges(std::size_t n, double p, Rng& rng) {
  EdgeList e;
  if (p <= 0.0 || n < 2) return e;
  if (p >= 1.0) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return e;
  }
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double u = 1.0 - rng.uniform01();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log(u) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) e.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return e;
}

/// Largest connected component of G(n, p), relabelled densely.
inline Graph largest_component(const Graph& g);

inline Graph gnp_connected_component(std::size_t n, double p, Rng& rng) {
  return largest_component(Graph::from_edges(n, gnp_edges(n, p, rng), false));
}

/// G(n, p) resampled until connected. Only sensible where p is well above ln(n)/n.
inline Graph gnp_connected(std::size_t n, double p, Rng& rng, int max_attempts = 1000) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Graph g = Graph::from_edges(n, gnp_edges(n, p, rng), false);
    if (g.is_connected()) return g;
  }
  throw ParameterError("could not draw a connected G(n, p) sample");
}

/// Preferential attachment: each new vertex links to `links` distinct earlier
/// vertices chosen proportionally to degree. Starts from a clique on links + 1.
inline Graph barabasi_albert(std::size_t n, std::size_t links, Rng& rng) {
  if (links == 0 || n <= links) throw ParameterError("barabasi_albert needs n > links >= 1");
  EdgeList e;
  std::vector<Vertex> endpoints;
  for (Vertex u = 0; u <= links; ++u)
    for (Vertex v = u + 1; v <= links; ++v) {
      e.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  std::vector<Vertex> chosen;
  for (auto v = static_cast<Vertex>(links + 1); v < n; ++v) {
    chosen.clear();
    while (chosen.size() < links) {
      const Vertex target = endpoints[rng.below(endpoints.size())];
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) chosen.push_back(target);
    }
    for (Vertex target : chosen) {
      e.emplace_back(target, v);
      endpoints.push_back(target);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, e, false);
}

inline Graph largest_component(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> label(n, ~std::uint32_t{0});
  std::vector<std::size_t> sizes;
  for (Vertex root = 0; root < n; ++root) {
    if (label[root] != ~std::uint32_t{0}) continue;
    const auto id = static_cast<std::uint32_t>(sizes.size());
    std::size_t size = 0;
    std::vector<Vertex> stack{root};
    label[root] = id;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex w : g.adjacency(u))
        if (label[w] == ~std::uint32_t{0}) {
          label[w] = id;
          stack.push_back(w);
        }
    }
    sizes.push_back(size);
  }
  std::uint32_t best = 0;
  for (std::uint32_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] > sizes[best]) best = c;
  std::vector<Vertex> remap(n, ~Vertex{0});
  std::vector<RawId> ids;
  for (Vertex v = 0; v < n; ++v)
    if (label[v] == best) {
      remap[v] = static_cast<Vertex>(ids.size());
      ids.push_back(g.original_id(v));
    }
  EdgeList e;
  for (auto [u, v] : g.edge_list())
    if (label[u] == best) e.emplace_back(remap[u], remap[v]);
  const std::size_t kept = ids.size();
  return Graph::from_edges(kept, e, true, std::move(ids));
}

}  // namespace effres::gen
