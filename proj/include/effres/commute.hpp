#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "effres/estimate.hpp"
#include "effres/query.hpp"
#include "effres/walker.hpp"

namespace effres {

namespace detail {

inline void flag_capped(Estimate& est) {
  if (est.trials > 0 && 100 * est.capped > est.trials)
    est.flags.emplace_back("more than 1% of walks hit the step cap (" + std::to_string(est.capped) + " of " +
                           std::to_string(est.trials) + ")");
}

}  // namespace detail

/// Commute-time estimator, (1 + eps)-approximate when R(s,t) <= gamma.
///
/// The lower-degree endpoint becomes s. Each of N0 walks leaves s and runs
/// until its first return to s; X counts the walks that visited t on the
/// way. Since P[visit t before returning] = 1 / (R deg(s)), the estimate is
/// N0 / (deg(s) X). Walk j uses stream.substream(j).
template <AdjacencyOracle G>
Estimate est_mc(G& g, Vertex s, Vertex t, const EstimatorParams& p, const Rng& stream) {
  detail::Stopwatch clock;
  detail::check_pair(g, s, t);
  const AccessStats before = g.access_stats();
  std::uint64_t ds = g.degree(s);
  std::uint64_t dt = g.degree(t);
  if (ds > dt) {
    std::swap(s, t);
    std::swap(ds, dt);
  }
  const std::uint64_t walks =
      p.overrides.commute_walks ? *p.overrides.commute_walks : plan::commute_walks(p.gamma, ds, p.epsilon);
  if (walks == 0) throw ParameterError("commute walk count must be positive");
  const std::uint64_t cap = p.step_cap ? *p.step_cap : plan::default_step_cap(g.edge_count(), p.gamma);

  Estimate est;
  est.params_used = p;
  est.params_used.overrides.commute_walks = walks;
  est.params_used.step_cap = cap;
  est.trials = walks;
  for (std::uint64_t j = 0; j < walks; ++j) {
    Rng rng = stream.substream(j);
    bool seen_t = false;
    auto stop = [&](Vertex, Vertex current, std::uint64_t) -> std::optional<bool> {
      if (current == t) {
        seen_t = true;
        return std::nullopt;
      }
      if (current == s) return seen_t;
      return std::nullopt;
    };
    const auto walk = walk_until(g, s, stop, cap, rng);
    if (walk.outcome == WalkOutcome::capped)
      ++est.capped;
    else if (*walk.hit)
      ++est.successes;
  }
  detail::flag_capped(est);
  if (est.successes == 0) {
    est.success = false;
    est.value = std::numeric_limits<double>::infinity();
    est.message = "no s->t->s commute observed; R likely exceeds gamma";
  } else {
    est.value = static_cast<double>(walks) / (static_cast<double>(ds) * static_cast<double>(est.successes));
  }
  est.access = g.access_stats() - before;
  est.elapsed = clock.elapsed();
  return est;
}

/// Edge estimator, (1 + eps)-approximate with probability 1 - delta when
/// R(s,t) > gamma.
///
/// Requires (s,t) to be an edge. Each of M0 walks leaves s and stops at its
/// first arrival at t; X counts arrivals that came straight from s. With k
/// parallel s-t edges that probability is k R(s,t), so the estimate is
/// X / (k M0). Walk j uses stream.substream(j).
template <AdjacencyOracle G>
Estimate est_mc2(G& g, Vertex s, Vertex t, const EstimatorParams& p, const Rng& stream) {
  detail::Stopwatch clock;
  detail::check_pair(g, s, t);
  const AccessStats before = g.access_stats();
  std::uint64_t ds = g.degree(s);
  std::uint64_t dt = g.degree(t);
  if (ds > dt) {
    std::swap(s, t);
    std::swap(ds, dt);
  }
  std::uint64_t multiplicity = 0;
  for (std::uint64_t i = 0; i < ds; ++i)
    if (g.neighbor(s, i) == t) ++multiplicity;
  if (multiplicity == 0) throw PreconditionError("s and t are not adjacent");

  const std::uint64_t walks =
      p.overrides.edge_walks ? *p.overrides.edge_walks : plan::edge_walks(p.delta, p.epsilon, p.gamma);
  if (walks == 0) throw ParameterError("edge walk count must be positive");
  const std::uint64_t cap = p.step_cap ? *p.step_cap : plan::default_step_cap(g.edge_count(), p.gamma);

  Estimate est;
  est.params_used = p;
  est.params_used.overrides.edge_walks = walks;
  est.params_used.step_cap = cap;
  est.trials = walks;
  for (std::uint64_t j = 0; j < walks; ++j) {
    Rng rng = stream.substream(j);
    auto stop = [&](Vertex previous, Vertex current, std::uint64_t) -> std::optional<bool> {
      if (current == t) return previous == s;
      return std::nullopt;
    };
    const auto walk = walk_until(g, s, stop, cap, rng);
    if (walk.outcome == WalkOutcome::capped)
      ++est.capped;
    else if (*walk.hit)
      ++est.successes;
  }
  detail::flag_capped(est);
  est.value = static_cast<double>(est.successes) /
              (static_cast<double>(walks) * static_cast<double>(multiplicity));
  if (multiplicity > 1) est.flags.emplace_back("parallel s-t edges: " + std::to_string(multiplicity));
  est.access = g.access_stats() - before;
  est.elapsed = clock.elapsed();
  return est;
}

}  // namespace effres
