#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "effres/errors.hpp"
#include "effres/graph.hpp"
#include "effres/query.hpp"
#include "effres/rng.hpp"

namespace effres {

/// One simple random-walk step: a uniform neighbor of v.
template <AdjacencyOracle G>
Vertex step_simple(G& g, Vertex v, Rng& rng) {
  const std::uint64_t d = g.degree(v);
  if (d == 0) throw PreconditionError("random walk reached isolated vertex " + std::to_string(v));
  return g.neighbor(v, rng.below(d));
}

/// Endpoint of a length-step simple random walk.
template <AdjacencyOracle G>
Vertex simple_walk(G& g, Vertex start, std::uint64_t length, Rng& rng) {
  Vertex v = start;
  for (std::uint64_t i = 0; i < length; ++i) v = step_simple(g, v, rng);
  return v;
}

/// Endpoint of a length-step lazy walk: each step stays put with probability
/// 1/2, otherwise moves to a uniform neighbor. Holding steps cost no queries.
template <AdjacencyOracle G>
Vertex lazy_walk(G& g, Vertex start, std::uint64_t length, Rng& rng) {
  Vertex v = start;
  for (std::uint64_t i = 0; i < length; ++i)
    if (rng.coin()) v = step_simple(g, v, rng);
  return v;
}

namespace detail {

// Runs walks [0, walks) of the given length and calls sink(end) for each, in
// walk order. Walks advance in lockstep groups so that their independent
// dependency chains overlap; walk w still draws only from stream.substream(w).
template <AdjacencyOracle G, class Sink>
void for_each_walk_end(G& g, Vertex start, std::uint64_t length, std::uint64_t walks, const Rng& stream,
                       Sink&& sink) {
  constexpr std::uint64_t kLanes = 8;
  std::array<Rng, kLanes> rng;
  std::array<Vertex, kLanes> at;
  std::uint64_t w = 0;
  for (; w + kLanes <= walks; w += kLanes) {
    for (std::uint64_t k = 0; k < kLanes; ++k) {
      rng[k] = stream.substream(w + k);
      at[k] = start;
    }
    for (std::uint64_t i = 0; i < length; ++i)
      for (std::uint64_t k = 0; k < kLanes; ++k) at[k] = step_simple(g, at[k], rng[k]);
    for (std::uint64_t k = 0; k < kLanes; ++k) sink(at[k]);
  }
  for (; w < walks; ++w) {
    Rng tail = stream.substream(w);
    sink(simple_walk(g, start, length, tail));
  }
}

}  // namespace detail

struct WalkBatchResult {
  /// (vertex, walks ending there), sorted by vertex, zero counts omitted.
  std::vector<std::pair<Vertex, std::uint64_t>> endpoint_counts;
  std::uint64_t walks = 0;
  std::uint64_t length = 0;
  std::uint64_t total_steps = 0;

  std::uint64_t count(Vertex v) const {
    auto it = std::lower_bound(endpoint_counts.begin(), endpoint_counts.end(), v,
                               [](const auto& entry, Vertex key) { return entry.first < key; });
    return it != endpoint_counts.end() && it->first == v ? it->second : 0;
  }
};

/// `walks` independent simple walks of fixed length from `start`. Walk w is
/// driven by stream.substream(w), so tallies depend only on the stream.
template <AdjacencyOracle G>
WalkBatchResult batch_endpoints(G& g, Vertex start, std::uint64_t length, std::uint64_t walks,
                                const Rng& stream) {
  if (walks == 0) throw ParameterError("batch_endpoints needs at least one walk");
  WalkBatchResult result;
  result.walks = walks;
  result.length = length;
  result.total_steps = walks * length;
  if (length == 0) {
    result.endpoint_counts.emplace_back(start, walks);
    return result;
  }
  const std::uint64_t n = g.vertex_count();
  if (n <= std::max<std::uint64_t>(4096, walks)) {
    // Dense tally is cheaper than hashing once the batch is as large as the graph.
    std::vector<std::uint64_t> tally(n, 0);
    detail::for_each_walk_end(g, start, length, walks, stream, [&](Vertex end) { ++tally[end]; });
    for (Vertex v = 0; v < n; ++v)
      if (tally[v] != 0) result.endpoint_counts.emplace_back(v, tally[v]);
    return result;
  }
  std::unordered_map<Vertex, std::uint64_t> tally;
  detail::for_each_walk_end(g, start, length, walks, stream, [&](Vertex end) { ++tally[end]; });
  result.endpoint_counts.assign(tally.begin(), tally.end());
  std::sort(result.endpoint_counts.begin(), result.endpoint_counts.end());
  return result;
}

/// Same walks as batch_endpoints, but only counts arrivals at the watched
/// vertices. counts[k] is the number of walks that ended at watch[k].
template <AdjacencyOracle G, std::size_t K>
std::array<std::uint64_t, K> count_endpoints_at(G& g, Vertex start, std::uint64_t length,
                                               std::uint64_t walks, const Rng& stream,
                                               const std::array<Vertex, K>& watch) {
  std::array<std::uint64_t, K> counts{};
  auto record = [&](Vertex end, std::uint64_t times) {
    for (std::size_t k = 0; k < K; ++k)
      if (watch[k] == end) counts[k] += times;
  };
  if (length == 0) {
    record(start, walks);
    return counts;
  }
  detail::for_each_walk_end(g, start, length, walks, stream, [&](Vertex end) { record(end, 1); });
  return counts;
}

enum class WalkOutcome { stopped, capped };

template <class Payload>
struct WalkStop {
  WalkOutcome outcome = WalkOutcome::capped;
  std::uint64_t steps = 0;
  Vertex last = 0;
  std::optional<Payload> hit;
};

/// Walks from `start` until `stop(previous, current, step)` returns an
/// engaged optional, or until `cap` steps have been taken. `step` counts from
/// 1. The predicate sees the traversed edge, not just the current vertex.
template <AdjacencyOracle G, class Stop>
auto walk_until(G& g, Vertex start, Stop&& stop, std::uint64_t cap, Rng& rng) {
  using Result = std::invoke_result_t<Stop&, Vertex, Vertex, std::uint64_t>;
  using Payload = typename Result::value_type;
  if (cap == 0) throw ParameterError("walk_until needs a positive step cap");
  WalkStop<Payload> out;
  Vertex current = start;
  for (std::uint64_t step = 1; step <= cap; ++step) {
    const Vertex previous = current;
    current = step_simple(g, current, rng);
    if (Result r = stop(previous, current, step)) {
      out.outcome = WalkOutcome::stopped;
      out.steps = step;
      out.last = current;
      out.hit = std::move(*r);
      return out;
    }
  }
  out.outcome = WalkOutcome::capped;
  out.steps = cap;
  out.last = current;
  return out;
}

}  // namespace effres
