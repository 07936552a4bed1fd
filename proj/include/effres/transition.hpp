#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "effres/estimate.hpp"
#include "effres/query.hpp"
#include "effres/walker.hpp"

namespace effres {

/// beta_i = min(1, 1/(2m) + lambda^{2i}) for i < horizon.
inline std::vector<double> default_beta_schedule(double lambda, std::uint64_t edges, std::uint64_t horizon) {
  plan::check_lambda(lambda);
  if (edges == 0) throw ParameterError("beta schedule needs a graph with edges");
  std::vector<double> beta(horizon);
  const double floor = 1.0 / (2.0 * static_cast<double>(edges));
  for (std::uint64_t i = 0; i < horizon; ++i)
    beta[i] = std::min(1.0, floor + std::pow(lambda, 2.0 * static_cast<double>(i)));
  return beta;
}

template <AdjacencyOracle G>
std::vector<double> default_beta_schedule(double lambda, const G& g, std::uint64_t horizon) {
  return default_beta_schedule(lambda, g.edge_count(), horizon);
}

namespace detail {

inline plan::Horizon resolve_horizon(const EstimatorParams& p) {
  if (!p.lambda) throw ParameterError("lambda is required by the transition estimators");
  auto h = plan::transition_horizon(p.epsilon, *p.lambda);
  if (p.overrides.horizon) {
    if (*p.overrides.horizon == 0) throw ParameterError("horizon override must be positive");
    h = {*p.overrides.horizon, false};
  }
  return h;
}

}  // namespace detail

/// Truncated Neumann series with Monte Carlo transition probabilities.
///
/// For i < l, r walks of length i from s and from t estimate
/// 1_s P^i D^{-1} chi^T and 1_t P^i D^{-1} chi^T; their difference summed over i
/// approximates R(s,t) within eps with probability 9/10. Walks of length i
/// from s use stream.substream(2i), those from t use substream(2i + 1).
template <AdjacencyOracle G>
Estimate est_tranprob(G& g, Vertex s, Vertex t, const EstimatorParams& p, const Rng& stream) {
  detail::Stopwatch clock;
  detail::check_pair(g, s, t);
  const AccessStats before = g.access_stats();
  const auto horizon = detail::resolve_horizon(p);
  const std::uint64_t walks = p.overrides.walks ? *p.overrides.walks
                                                : plan::transition_walks(horizon.length, p.epsilon);
  if (walks == 0) throw ParameterError("walk count must be positive");

  Estimate est;
  est.params_used = p;
  est.params_used.overrides.horizon = horizon.length;
  est.params_used.overrides.walks = walks;
  if (horizon.clamped) est.flags.emplace_back("horizon clamped to 1");

  const double ds = static_cast<double>(g.degree(s));
  const double dt = static_cast<double>(g.degree(t));
  const double r = static_cast<double>(walks);
  const std::array<Vertex, 2> watch{s, t};
  double sum = 0.0;
  for (std::uint64_t i = 0; i < horizon.length; ++i) {
    const auto from_s = count_endpoints_at(g, s, i, walks, stream.substream(2 * i), watch);
    const auto from_t = count_endpoints_at(g, t, i, walks, stream.substream(2 * i + 1), watch);
    sum += static_cast<double>(from_s[0]) / (r * ds) - static_cast<double>(from_s[1]) / (r * dt) -
           static_cast<double>(from_t[0]) / (r * ds) + static_cast<double>(from_t[1]) / (r * dt);
  }
  est.value = sum;
  est.trials = 2 * walks * horizon.length;
  est.access = g.access_stats() - before;
  est.elapsed = clock.elapsed();
  return est;
}

namespace detail {

using SparseVector = std::vector<std::pair<Vertex, double>>;

template <AdjacencyOracle G>
class DegreeCache {
 public:
  explicit DegreeCache(G& g) : g_(&g) {}
  double operator()(Vertex v) {
    auto [it, inserted] = cache_.try_emplace(v, 0);
    if (inserted) it->second = g_->degree(v);
    return static_cast<double>(it->second);
  }

 private:
  G* g_;
  std::unordered_map<Vertex, std::uint64_t> cache_;
};

// Entry v: fraction of walks ending at v divided by sqrt(deg(v)).
template <class Degrees>
SparseVector scaled_distribution(const WalkBatchResult& batch, Degrees& degree) {
  SparseVector out;
  out.reserve(batch.endpoint_counts.size());
  const double walks = static_cast<double>(batch.walks);
  for (auto [v, count] : batch.endpoint_counts)
    out.emplace_back(v, static_cast<double>(count) / (walks * std::sqrt(degree(v))));
  return out;
}

// Iterates the smaller support and binary-searches the larger one.
inline double sparse_dot(const SparseVector& a, const SparseVector& b) {
  const SparseVector& small = a.size() <= b.size() ? a : b;
  const SparseVector& large = a.size() <= b.size() ? b : a;
  double sum = 0.0;
  for (auto [v, x] : small) {
    auto it = std::lower_bound(large.begin(), large.end(), v,
                               [](const auto& e, Vertex key) { return e.first < key; });
    if (it != large.end() && it->first == v) sum += x * it->second;
  }
  return sum;
}

}  // namespace detail

/// Transition probabilities as collision probabilities of two half-length walks.
///
/// For each i < l, r_i walks of length ceil(i/2) and r_i walks of length
/// floor(i/2) from both s and t give sparse vectors X_s, X_t, Y_s, Y_t; the
/// i-th term is (X_s - X_t) . (Y_s - Y_t). Streams 4i .. 4i+3 drive X_s, X_t,
/// Y_s, Y_t.
template <AdjacencyOracle G>
Estimate est_tranprob_collision(G& g, Vertex s, Vertex t, const EstimatorParams& p, const Rng& stream) {
  detail::Stopwatch clock;
  detail::check_pair(g, s, t);
  const AccessStats before = g.access_stats();
  const auto horizon = detail::resolve_horizon(p);
  const std::uint64_t l = horizon.length;

  std::vector<double> beta = p.beta_schedule;
  if (beta.empty()) beta = default_beta_schedule(*p.lambda, g.edge_count(), l);
  if (beta.size() < l) throw ParameterError("beta schedule shorter than the walk horizon");
  for (double b : beta)
    if (!(b > 0.0) || b > 1.0) throw ParameterError("beta values must lie in (0, 1]");

  std::vector<std::uint64_t> walks(l);
  const auto& ov = p.overrides.collision_walks;
  for (std::uint64_t i = 0; i < l; ++i) {
    if (ov.empty())
      walks[i] = plan::collision_walks(l, beta[i], p.epsilon);
    else if (ov.size() == 1)
      walks[i] = ov[0];
    else if (i < ov.size())
      walks[i] = ov[i];
    else
      throw ParameterError("collision walk override shorter than the walk horizon");
    if (walks[i] == 0) throw ParameterError("collision walk counts must be positive");
  }

  Estimate est;
  est.params_used = p;
  est.params_used.beta_schedule = beta;
  est.params_used.overrides.horizon = l;
  est.params_used.overrides.collision_walks = walks;
  if (horizon.clamped) est.flags.emplace_back("horizon clamped to 1");

  detail::DegreeCache<G> degree(g);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < l; ++i) {
    const std::uint64_t long_half = (i + 1) / 2;
    const std::uint64_t short_half = i / 2;
    const auto xs = detail::scaled_distribution(batch_endpoints(g, s, long_half, walks[i], stream.substream(4 * i)), degree);
    const auto xt = detail::scaled_distribution(batch_endpoints(g, t, long_half, walks[i], stream.substream(4 * i + 1)), degree);
    const auto ys = detail::scaled_distribution(batch_endpoints(g, s, short_half, walks[i], stream.substream(4 * i + 2)), degree);
    const auto yt = detail::scaled_distribution(batch_endpoints(g, t, short_half, walks[i], stream.substream(4 * i + 3)), degree);
    sum += detail::sparse_dot(xs, ys) - detail::sparse_dot(xs, yt) - detail::sparse_dot(xt, ys) +
           detail::sparse_dot(xt, yt);
    est.trials += 4 * walks[i];
  }
  est.value = sum;
  est.access = g.access_stats() - before;
  est.elapsed = clock.elapsed();
  return est;
}

}  // namespace effres
