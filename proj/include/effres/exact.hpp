#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "effres/errors.hpp"
#include "effres/graph.hpp"
#include "effres/rng.hpp"
#include "effres/walker.hpp"

namespace effres {

struct ExactOptions {
  /// Largest vertex count the dense oracle accepts.
  std::size_t dense_cap = 20000;
};

namespace detail {

inline void require_dense(const Graph& g, const ExactOptions& opts, const char* what) {
  if (g.vertex_count() > opts.dense_cap)
    throw OracleError(std::string(what) + ": graph has " + std::to_string(g.vertex_count()) +
                      " vertices, above the dense cap of " + std::to_string(opts.dense_cap) +
                      "; use a local estimator instead");
}

inline void require_connected(const Graph& g, const char* what) {
  if (!g.is_connected()) throw OracleError(std::string(what) + ": graph is not connected");
}

}  // namespace detail

/// L = D - A with parallel edges contributing their multiplicity. Entries are
/// small integers, so row sums are exactly zero.
inline Eigen::MatrixXd laplacian_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < n; ++u) {
    lap(u, u) = static_cast<double>(g.raw_degree(u));
    for (Vertex v : g.adjacency(u)) lap(u, v) -= 1.0;
  }
  return lap;
}

namespace detail {

// For a connected graph, L + J/n is positive definite and its inverse equals
// L^+ + J/n. Any vector orthogonal to the all-ones kernel is solved exactly.
inline Eigen::LLT<Eigen::MatrixXd> grounded_factor(const Graph& g) {
  Eigen::MatrixXd shifted = laplacian_matrix(g);
  shifted.array() += 1.0 / static_cast<double>(g.vertex_count());
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) throw OracleError("Laplacian factorization failed");
  return llt;
}

}  // namespace detail

inline Eigen::MatrixXd laplacian_pinv(const Graph& g, const ExactOptions& opts = {}) {
  detail::require_dense(g, opts, "laplacian_pinv");
  detail::require_connected(g, "laplacian_pinv");
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  auto llt = detail::grounded_factor(g);
  Eigen::MatrixXd pinv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  pinv.array() -= 1.0 / static_cast<double>(n);
  return pinv;
}

/// R(s,t) = chi L^+ chi^T with chi = 1_s - 1_t, by one grounded solve.
inline double effective_resistance_exact(const Graph& g, Vertex s, Vertex t,
                                         const ExactOptions& opts = {}) {
  if (!g.contains(s) || !g.contains(t)) throw QueryError("vertex out of range");
  detail::require_dense(g, opts, "effective_resistance_exact");
  detail::require_connected(g, "effective_resistance_exact");
  if (s == t) return 0.0;
  auto llt = detail::grounded_factor(g);
  Eigen::VectorXd chi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.vertex_count()));
  chi(s) = 1.0;
  chi(t) = -1.0;
  return chi.dot(llt.solve(chi));
}

/// Holds L^+ for repeated resistance lookups on one graph.
class ResistanceOracle {
 public:
  explicit ResistanceOracle(const Graph& g, const ExactOptions& opts = {})
      : pinv_(laplacian_pinv(g, opts)) {}

  double resistance(Vertex s, Vertex t) const {
    if (s >= pinv_.rows() || t >= pinv_.rows()) throw QueryError("vertex out of range");
    return pinv_(s, s) - 2.0 * pinv_(s, t) + pinv_(t, t);
  }
  const Eigen::MatrixXd& pinv() const noexcept { return pinv_; }

 private:
  Eigen::MatrixXd pinv_;
};

/// Dense spectral data of a connected graph.
struct DenseSpectrum {
  Eigen::MatrixXd laplacian;
  Eigen::MatrixXd pinv;
  /// Eigenvalues of Q = D^{-1/2} A D^{-1/2} in decreasing order.
  Eigen::VectorXd walk_eigenvalues;
  /// max(|lambda_2|, |lambda_n|).
  double lambda = 0.0;
  /// lambda_n = -1: the simple walk is periodic (graph is bipartite).
  bool periodic = false;

  static DenseSpectrum compute(const Graph& g, const ExactOptions& opts = {});
};

namespace detail {

inline Eigen::VectorXd walk_spectrum(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (Vertex u = 0; u < n; ++u) {
    const double du = static_cast<double>(g.raw_degree(u));
    for (Vertex v : g.adjacency(u))
      q(u, v) += 1.0 / std::sqrt(du * static_cast<double>(g.raw_degree(v)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw OracleError("eigenvalue solver failed");
  Eigen::VectorXd ascending = solver.eigenvalues();
  return ascending.reverse();
}

constexpr double kPeriodicTolerance = 1e-9;

}  // namespace detail

struct SpectralLambda {
  double value = 0.0;
  bool periodic = false;
};

inline SpectralLambda spectral_lambda(const Graph& g, const ExactOptions& opts = {}) {
  detail::require_dense(g, opts, "spectral_lambda");
  detail::require_connected(g, "spectral_lambda");
  if (g.vertex_count() < 2) throw OracleError("spectral_lambda: need at least two vertices");
  const Eigen::VectorXd eig = detail::walk_spectrum(g);
  const double smallest = eig(eig.size() - 1);
  const double lambda = std::min(1.0, std::max(std::abs(eig(1)), std::abs(smallest)));
  return {lambda, smallest <= -1.0 + detail::kPeriodicTolerance};
}

inline DenseSpectrum DenseSpectrum::compute(const Graph& g, const ExactOptions& opts) {
  DenseSpectrum out;
  out.laplacian = laplacian_matrix(g);
  out.pinv = laplacian_pinv(g, opts);
  out.walk_eigenvalues = detail::walk_spectrum(g);
  const auto lam = spectral_lambda(g, opts);
  out.lambda = lam.value;
  out.periodic = lam.periodic;
  return out;
}

/// Spanning-tree count by the Matrix-Tree theorem.
struct SpanningTreeCount {
  bool connected = false;
  /// Natural log of T(G); -inf when disconnected.
  double log_count = -std::numeric_limits<double>::infinity();
  /// Exact T(G), filled for graphs with at most kExactTreeLimit vertices.
  std::optional<boost::multiprecision::cpp_int> exact;
};

inline constexpr std::size_t kExactTreeLimit = 30;

namespace detail {

// Fraction-free (Bareiss) determinant without pivoting. The reduced Laplacian
// of a connected graph is positive definite, so leading minors never vanish.
inline boost::multiprecision::cpp_int bareiss_determinant(
    std::vector<std::vector<boost::multiprecision::cpp_int>> m) {
  using boost::multiprecision::cpp_int;
  const std::size_t k = m.size();
  if (k == 0) return 1;
  cpp_int previous = 1;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (m[p][p] == 0) throw OracleError("zero pivot in fraction-free elimination");
    for (std::size_t i = p + 1; i < k; ++i)
      for (std::size_t j = p + 1; j < k; ++j)
        m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / previous;
    previous = m[p][p];
  }
  return m[k - 1][k - 1];
}

}  // namespace detail

inline SpanningTreeCount count_spanning_trees(const Graph& g, const ExactOptions& opts = {}) {
  detail::require_dense(g, opts, "count_spanning_trees");
  SpanningTreeCount out;
  const std::size_t n = g.vertex_count();
  if (n == 0) return out;
  if (!g.is_connected()) {
    out.exact = 0;
    return out;
  }
  out.connected = true;
  if (n == 1) {
    out.log_count = 0.0;
    out.exact = 1;
    return out;
  }
  const Eigen::MatrixXd lap = laplacian_matrix(g);
  const auto k = static_cast<Eigen::Index>(n - 1);
  Eigen::LLT<Eigen::MatrixXd> llt(lap.bottomRightCorner(k, k));
  if (llt.info() != Eigen::Success) throw OracleError("reduced Laplacian is not positive definite");
  out.log_count = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  if (n <= kExactTreeLimit) {
    std::vector<std::vector<boost::multiprecision::cpp_int>> m(
        n - 1, std::vector<boost::multiprecision::cpp_int>(n - 1));
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j + 1 < n; ++j)
        m[i][j] = static_cast<long long>(lap(static_cast<Eigen::Index>(i + 1),
                                             static_cast<Eigen::Index>(j + 1)));
    out.exact = detail::bareiss_determinant(std::move(m));
  }
  return out;
}

struct CommuteTimeEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  /// Trials abandoned at the safety cap; they are excluded from the mean.
  std::uint64_t aborted = 0;
};

/// Empirical commute time: mean length of s -> t -> s round trips. Trial k
/// uses rng.substream(k). A trial longer than 10^4 * m steps is abandoned.
inline CommuteTimeEstimate commute_time_sim(const Graph& g, Vertex s, Vertex t,
                                            std::uint64_t trials, const Rng& rng) {
  if (!g.contains(s) || !g.contains(t)) throw QueryError("vertex out of range");
  if (!g.is_connected()) throw OracleError("commute_time_sim: graph is not connected");
  if (trials == 0) throw ParameterError("commute_time_sim needs at least one trial");
  CommuteTimeEstimate out;
  out.trials = trials;
  if (s == t) return out;
  const std::uint64_t cap = 10000 * g.edge_count();
  QueryView view(g);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t completed = 0;
  for (std::uint64_t k = 0; k < trials; ++k) {
    Rng stream = rng.substream(k);
    bool reached_t = false;
    auto stop = [&](Vertex, Vertex current, std::uint64_t) -> std::optional<bool> {
      if (current == t) reached_t = true;
      if (reached_t && current == s) return true;
      return std::nullopt;
    };
    auto result = walk_until(view, s, stop, cap, stream);
    if (result.outcome == WalkOutcome::capped) {
      ++out.aborted;
      continue;
    }
    const auto steps = static_cast<double>(result.steps);
    sum += steps;
    sum_sq += steps * steps;
    ++completed;
  }
  if (completed > 0) {
    const double c = static_cast<double>(completed);
    out.mean = sum / c;
    const double var = completed > 1 ? (sum_sq - c * out.mean * out.mean) / (c - 1.0) : 0.0;
    out.standard_error = std::sqrt(std::max(0.0, var) / c);
  }
  return out;
}

}  // namespace effres
