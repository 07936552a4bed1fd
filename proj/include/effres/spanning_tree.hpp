#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "effres/estimate.hpp"
#include "effres/query.hpp"
#include "effres/walker.hpp"

namespace effres {

/// Samples t in [1, limit) with probability 1 / (s t), s = sum_{1 <= t < limit} 1/t.
///
/// Draws x with density proportional to 1/x on [1, limit), takes floor(x),
/// and accepts with probability ln 2 / (t ln(1 + 1/t)). Acceptance is at
/// least ln 2 and needs no table, so huge limits are fine.
class HarmonicLengthSampler {
 public:
  explicit HarmonicLengthSampler(std::uint64_t limit)
      : limit_(limit), log_limit_(std::log(static_cast<double>(limit))),
        normalizer_(plan::harmonic_number(limit - 1)) {
    if (limit < 2) throw ParameterError("harmonic sampler needs limit >= 2");
  }

  std::uint64_t operator()(Rng& rng) const {
    for (;;) {
      const double x = std::exp(rng.uniform01() * log_limit_);
      auto t = static_cast<std::uint64_t>(x);
      if (t < 1 || t >= limit_) continue;
      const double td = static_cast<double>(t);
      if (rng.uniform01() * td * std::log1p(1.0 / td) < std::numbers::ln2) return t;
    }
  }

  double normalizer() const noexcept { return normalizer_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  double log_limit_;
  double normalizer_;
};

/// Local estimate of log T(G) / n, additive error eps with probability 1 - delta.
///
/// Uses log T(G) = -log(4m) + sum_v log(2 deg v) - sum_{t>=1} (tr(P_lazy^t) - 1) / t:
/// the return-probability series is sampled with lazy walks of harmonically
/// distributed length from uniform start vertices, truncated at 2r, and the
/// degree term is estimated from uniform vertex samples. Walk j draws from
/// stream.substream(0).substream(j); degree samples from stream.substream(1).
template <AdjacencyOracle G>
double app_num_st(G& g, double eps, double delta, const EstimatorParams& p, const Rng& stream) {
  const std::uint64_t n = g.vertex_count();
  const std::uint64_t m = g.edge_count();
  if (n == 0 || m == 0) throw PreconditionError("spanning-tree estimator needs a graph with edges");
  const auto plan = plan::tree_density_plan(eps, delta, n, p.overrides);
  const HarmonicLengthSampler lengths(2 * plan.range);
  const Rng walk_streams = stream.substream(0);
  std::uint64_t returns = 0;
  for (std::uint64_t j = 0; j < plan.walks; ++j) {
    Rng rng = walk_streams.substream(j);
    const Vertex x = g.sample_vertex(rng);
    const std::uint64_t t = lengths(rng);
    if (lazy_walk(g, x, t, rng) == x) ++returns;
  }
  Rng degree_rng = stream.substream(1);
  double log_degree_sum = 0.0;
  for (std::uint64_t k = 0; k < plan.degree_samples; ++k)
    log_degree_sum += std::log(2.0 * static_cast<double>(g.degree(g.sample_vertex(degree_rng))));
  const double nd = static_cast<double>(n);
  const double s = lengths.normalizer();
  return -std::log(4.0 * static_cast<double>(m)) / nd +
         log_degree_sum / static_cast<double>(plan.degree_samples) -
         s * static_cast<double>(returns) / static_cast<double>(plan.walks) + s / nd;
}

/// Default log-tree-density estimator for est_spantree.
struct AppNumSt {
  template <AdjacencyOracle G>
  double operator()(G& g, double eps, double delta, const EstimatorParams& p, const Rng& stream) const {
    return app_num_st(g, eps, delta, p, stream);
  }
};

/// R(s,t) = T(G') / T(G), G' = G with s and t identified.
///
/// a estimates log T(G') / (n - 1) on a contracted view of G, b estimates
/// log T(G) / n, and the result is exp(a (n - 1) - b n). `density` is any
/// callable with app_num_st's signature (tests substitute an exact one).
template <AdjacencyOracle G, class TreeDensity = AppNumSt>
Estimate est_spantree(G& g, Vertex s, Vertex t, double eps, double delta, const EstimatorParams& p,
                      const Rng& stream, TreeDensity density = {}) {
  detail::Stopwatch clock;
  detail::check_pair(g, s, t);
  plan::check_unit_open(eps, "epsilon");
  plan::check_unit_open(delta, "delta");
  const AccessStats before = g.access_stats();
  const double n = static_cast<double>(g.vertex_count());

  ContractedView<G> contracted(g, s, t);
  const double a = density(contracted, eps / 2.0, delta / 2.0, p, stream.substream(0));
  const double b = density(g, eps / 2.0, delta / 2.0, p, stream.substream(1));

  Estimate est;
  est.params_used = p;
  est.params_used.epsilon = eps;
  est.params_used.delta = delta;
  const auto resolved = plan::tree_density_plan(eps / 2.0, delta / 2.0, g.vertex_count(), p.overrides);
  est.params_used.overrides.tree_range = resolved.range;
  est.params_used.overrides.tree_walks = resolved.walks;
  est.value = std::exp(a * (n - 1.0) - b * n);
  est.access = g.access_stats() - before;
  est.elapsed = clock.elapsed();
  return est;
}

}  // namespace effres
