#pragma once

#include <concepts>
#include <cstdint>
#include <vector>

#include "effres/errors.hpp"
#include "effres/graph.hpp"
#include "effres/rng.hpp"

namespace effres {

/// The adjacency-list query model: degree, i-th neighbor and uniform vertex
/// sampling, plus knowledge of n and m. Estimators and walkers are written
/// against this concept only.
template <class G>
concept AdjacencyOracle = requires(G& g, const G& cg, Vertex v, std::uint64_t i, Rng& rng) {
  { g.degree(v) } -> std::convertible_to<std::uint64_t>;
  { g.neighbor(v, i) } -> std::convertible_to<Vertex>;
  { g.sample_vertex(rng) } -> std::convertible_to<Vertex>;
  { cg.vertex_count() } -> std::convertible_to<std::uint64_t>;
  { cg.edge_count() } -> std::convertible_to<std::uint64_t>;
  { cg.access_stats() } -> std::same_as<AccessStats>;
};

/// Counting facade over a Graph that exposes nothing but the query model.
///
/// Counters are local to the view, so one view per query (or per thread)
/// gives isolated statistics. A view is not safe to share across threads.
class QueryView {
 public:
  explicit QueryView(const Graph& g) noexcept : graph_(&g) {}

  std::uint64_t degree(Vertex v) {
    ++stats_.degree_queries;
    return graph_->raw_degree(v);
  }

  Vertex neighbor(Vertex v, std::uint64_t i) {
    auto adj = graph_->adjacency(v);
    if (i >= adj.size()) throw QueryError("neighbor index out of range");
    ++stats_.neighbor_queries;
    return adj[i];
  }

  Vertex sample_vertex(Rng& rng) {
    ++stats_.vertex_samples;
    return static_cast<Vertex>(rng.below(graph_->vertex_count()));
  }

  std::uint64_t vertex_count() const noexcept { return graph_->vertex_count(); }
  std::uint64_t edge_count() const noexcept { return graph_->edge_count(); }
  AccessStats access_stats() const noexcept { return stats_; }
  void reset_access_stats() noexcept { stats_ = {}; }

 private:
  const Graph* graph_;
  AccessStats stats_;
};

static_assert(AdjacencyOracle<QueryView>);
static_assert(AdjacencyOracle<const Graph>);

/// The graph with s and t identified, simulated on top of another oracle.
///
/// Labels follow contract_pair: the merged vertex sits in s's slot and ids
/// above t shift down by one. Building the view costs deg(s) + deg(t)
/// neighbor queries; afterwards every query maps to O(1) base queries.
template <AdjacencyOracle Base>
class ContractedView {
 public:
  ContractedView(Base& base, Vertex s, Vertex t) : base_(&base), s_(s), t_(t) {
    if (s == t) throw PreconditionError("contraction needs two distinct vertices");
    if (s >= base.vertex_count() || t >= base.vertex_count())
      throw QueryError("contraction vertex out of range");
    for (Vertex end : {s, t}) {
      const Vertex other = end == s ? t : s;
      const std::uint64_t d = base.degree(end);
      for (std::uint64_t i = 0; i < d; ++i) {
        const Vertex w = base.neighbor(end, i);
        if (w == other)
          ++multiplicity_;
        else
          merged_.push_back(w);
      }
    }
    multiplicity_ /= 2;
  }

  std::uint64_t degree(Vertex v) {
    const Vertex b = to_base(v);
    if (b == s_) return merged_.size();
    return base_->degree(b);
  }

  Vertex neighbor(Vertex v, std::uint64_t i) {
    const Vertex b = to_base(v);
    if (b == s_) {
      if (i >= merged_.size()) throw QueryError("neighbor index out of range");
      return from_base(merged_[i]);
    }
    return from_base(base_->neighbor(b, i));
  }

  Vertex sample_vertex(Rng& rng) {
    for (;;) {
      const Vertex b = base_->sample_vertex(rng);
      if (b != t_) return from_base(b);
    }
  }

  std::uint64_t vertex_count() const noexcept { return base_->vertex_count() - 1; }
  std::uint64_t edge_count() const noexcept { return base_->edge_count() - multiplicity_; }
  AccessStats access_stats() const { return base_->access_stats(); }

  /// Number of s-t edges removed by the merge.
  std::uint64_t removed_edges() const noexcept { return multiplicity_; }

 private:
  Vertex from_base(Vertex b) const noexcept {
    if (b == t_) b = s_;
    return b > t_ ? b - 1 : b;
  }
  Vertex to_base(Vertex v) const {
    if (v >= vertex_count()) throw QueryError("vertex out of range in contracted view");
    return v >= t_ ? v + 1 : v;
  }

  Base* base_;
  Vertex s_;
  Vertex t_;
  std::uint64_t multiplicity_ = 0;
  std::vector<Vertex> merged_;
};

}  // namespace effres
