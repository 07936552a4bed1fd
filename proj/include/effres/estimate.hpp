#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "effres/errors.hpp"
#include "effres/graph.hpp"

namespace effres {

/// Explicit sample counts that replace the closed-form ones. Meant for
/// desk-scale runs where the worst-case constants are unaffordable.
struct SampleOverrides {
  std::optional<std::uint64_t> horizon;         // walk-length horizon of the transition estimators
  std::optional<std::uint64_t> walks;           // walks per length, transition estimator
  std::vector<std::uint64_t> collision_walks;   // per-length walks, collision estimator (one entry = all)
  std::optional<std::uint64_t> commute_walks;   // N0
  std::optional<std::uint64_t> edge_walks;      // M0
  std::optional<std::uint64_t> tree_range;      // r of the spanning-tree density estimator
  std::optional<std::uint64_t> tree_walks;      // N of the spanning-tree density estimator
  std::optional<std::uint64_t> tree_degree_samples;
};

struct EstimatorParams {
  double epsilon = 0.1;
  /// Spectral parameter max(|lambda_2|, |lambda_n|) of the walk matrix.
  std::optional<double> lambda;
  /// Resistance threshold for the commute-time estimators.
  double gamma = 0.1;
  /// Failure probability.
  double delta = 1.0 / 3.0;
  /// Upper bounds on ||1_v P^i D^{-1/2}||^2; empty means default_beta_schedule.
  std::vector<double> beta_schedule;
  SampleOverrides overrides;
  /// Step cap for open-ended walks; defaults to 20 * m * max(gamma, 1).
  std::optional<std::uint64_t> step_cap;
  std::uint64_t seed = 0;
};

struct Estimate {
  double value = 0.0;
  bool success = true;
  /// Successful walks (commute estimators) and walks attempted.
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  /// Open-ended walks stopped by the step cap.
  std::uint64_t capped = 0;
  AccessStats access;
  std::chrono::nanoseconds elapsed{0};
  /// Input parameters with every sample count resolved.
  EstimatorParams params_used;
  std::vector<std::string> flags;
  std::string message;
};

namespace plan {

inline std::uint64_t ceil_count(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x >= 0x1.0p63)
    throw ParameterError(std::string(what) + " is not representable as a sample count");
  return static_cast<std::uint64_t>(std::ceil(x));
}

inline void check_epsilon(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("epsilon must be positive");
}

inline void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !(lambda < 1.0))
    throw ParameterError("lambda must lie in (0, 1); lambda = 1 means the walk is periodic "
                         "(bipartite graph) and the transition estimators do not apply");
}

inline void check_unit_open(double x, const char* name) {
  if (!(x > 0.0) || !(x < 1.0)) throw ParameterError(std::string(name) + " must lie in (0, 1)");
}

struct Horizon {
  std::uint64_t length = 1;
  bool clamped = false;
};

/// ceil(log(4 / (eps (1 - lambda))) / log(1 / lambda)), at least 1.
inline Horizon transition_horizon(double eps, double lambda) {
  check_epsilon(eps);
  check_lambda(lambda);
  const double raw = std::ceil(std::log(4.0 / (eps * (1.0 - lambda))) / std::log(1.0 / lambda));
  if (!(raw >= 1.0)) return {1, true};
  return {ceil_count(raw, "walk horizon"), false};
}

/// ceil(40 l^2 ln(80 l) / eps^2).
inline std::uint64_t transition_walks(std::uint64_t horizon, double eps) {
  check_epsilon(eps);
  const double l = static_cast<double>(horizon);
  return ceil_count(40.0 * l * l * std::log(80.0 * l) / (eps * eps), "transition walk count");
}

/// ceil(20000 (sqrt(l^3 beta / eps^2) + l^3 beta^{3/2} / eps^2)).
inline std::uint64_t collision_walks(std::uint64_t horizon, double beta, double eps) {
  check_epsilon(eps);
  if (!(beta > 0.0) || beta > 1.0) throw ParameterError("beta must lie in (0, 1]");
  const double l3 = std::pow(static_cast<double>(horizon), 3);
  return ceil_count(20000.0 * (std::sqrt(l3 * beta / (eps * eps)) + l3 * std::pow(beta, 1.5) / (eps * eps)),
                    "collision walk count");
}

/// N0 = ceil(3 ln 6 gamma deg(s) / eps^2).
inline std::uint64_t commute_walks(double gamma, std::uint64_t degree_s, double eps) {
  check_epsilon(eps);
  if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
  return ceil_count(3.0 * std::log(6.0) * gamma * static_cast<double>(degree_s) / (eps * eps),
                    "commute walk count");
}

/// M0 = ceil(3 ln(1/delta) / (eps^2 gamma)).
inline std::uint64_t edge_walks(double delta, double eps, double gamma) {
  check_epsilon(eps);
  check_unit_open(delta, "delta");
  if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
  return ceil_count(3.0 * std::log(1.0 / delta) / (eps * eps * gamma), "edge walk count");
}

/// Sum_{t=1}^{count} 1/t.
inline double harmonic_number(std::uint64_t count) {
  if (count <= 10'000'000) {
    double sum = 0.0;
    for (std::uint64_t t = count; t >= 1; --t) sum += 1.0 / static_cast<double>(t);
    return sum;
  }
  const double n = static_cast<double>(count);
  return std::log(n) + std::numbers::egamma + 1.0 / (2.0 * n) - 1.0 / (12.0 * n * n) +
         1.0 / (120.0 * n * n * n * n);
}

struct TreeDensityPlan {
  std::uint64_t range = 0;          // r; walk lengths are drawn from [1, 2r)
  double harmonic = 0.0;            // s = sum_{1 <= t < 2r} 1/t
  std::uint64_t walks = 0;          // N
  std::uint64_t degree_samples = 0;
};

/// r = ceil(90^3 / eps^3), N = ceil(8 ln(4/delta) s^2 / eps^2),
/// degree samples = ceil(256 ln(1/delta) (ln n)^2 / eps^2), each overridable.
inline TreeDensityPlan tree_density_plan(double eps, double delta, std::uint64_t n,
                                         const SampleOverrides& o = {}) {
  check_unit_open(eps, "epsilon");
  check_unit_open(delta, "delta");
  TreeDensityPlan p;
  p.range = o.tree_range ? *o.tree_range : ceil_count(std::pow(90.0 / eps, 3), "tree range");
  if (p.range == 0) throw ParameterError("tree range must be positive");
  p.harmonic = harmonic_number(2 * p.range - 1);
  p.walks = o.tree_walks ? *o.tree_walks
                         : ceil_count(8.0 * std::log(4.0 / delta) * p.harmonic * p.harmonic / (eps * eps),
                                      "tree walk count");
  const double ln_n = std::log(static_cast<double>(n));
  p.degree_samples = o.tree_degree_samples
                         ? *o.tree_degree_samples
                         : ceil_count(256.0 * std::log(1.0 / delta) * ln_n * ln_n / (eps * eps),
                                      "degree sample count");
  if (p.walks == 0) throw ParameterError("tree walk count must be positive");
  if (p.degree_samples == 0) p.degree_samples = 1;
  return p;
}

/// 20 * m * max(gamma, 1), rounded up.
inline std::uint64_t default_step_cap(std::uint64_t edges, double gamma) {
  return ceil_count(20.0 * static_cast<double>(edges) * std::max(gamma, 1.0), "step cap");
}

}  // namespace plan

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

template <class G>
void check_pair(const G& g, Vertex s, Vertex t) {
  if (s >= g.vertex_count() || t >= g.vertex_count()) throw QueryError("query vertex out of range");
  if (s == t) throw PreconditionError("s and t must differ (R(s,s) = 0)");
}

}  // namespace detail

}  // namespace effres
