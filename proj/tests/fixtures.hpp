#pragma once

#include <string>
#include <utility>
#include <vector>

#include "effres/generators.hpp"
#include "effres/graph.hpp"
#include "effres/rng.hpp"

namespace fixture {

using effres::Graph;

struct Named {
  std::string name;
  Graph graph;
};

/// `count` connected G(n, 1/2) graphs with n drawn from [min_n, max_n].
inline std::vector<Graph> random_connected(std::size_t count, std::size_t min_n, std::size_t max_n,
                                           std::uint64_t seed, double p = 0.5) {
  effres::Rng rng(seed);
  std::vector<Graph> out;
  while (out.size() < count) {
    const std::size_t n = min_n + rng.below(max_n - min_n + 1);
    out.push_back(effres::gen::gnp_connected(n, p, rng));
  }
  return out;
}

inline Graph from_pairs(std::size_t n, std::vector<std::pair<effres::Vertex, effres::Vertex>> edges) {
  return Graph::from_edges(n, edges);
}

/// K3 with vertices 0 and 1 merged: two vertices, two parallel edges.
inline Graph contracted_triangle() { return from_pairs(2, {{0, 1}, {0, 1}}); }

}  // namespace fixture
