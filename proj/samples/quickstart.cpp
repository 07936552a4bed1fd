// Estimate R(s,t) on a small random graph four ways and compare with the
// exact value from the dense oracle.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "effres/effres.hpp"

int main() {
  using namespace effres;

  Rng rng(42);
  const Graph g = gen::gnp_connected_component(400, 12.0 / 400.0, rng);
  const auto [s, t] = g.edge_list().front();

  const double exact = effective_resistance_exact(g, s, t);
  const double lambda = spectral_lambda(g).value;
  std::printf("n=%zu m=%llu lambda=%.4f R(%u,%u)=%.6f\n", g.vertex_count(),
              static_cast<unsigned long long>(g.edge_count()), lambda, s, t, exact);

  EstimatorParams p;
  p.epsilon = 0.1;
  p.lambda = lambda;
  p.gamma = 0.05;

  auto report = [&](const char* name, const Estimate& e) {
    std::printf("%-6s %.6f  |error| %.4f  queries %llu  %.3f ms\n", name, e.value, std::abs(e.value - exact),
                static_cast<unsigned long long>(e.access.total()),
                std::chrono::duration<double, std::milli>(e.elapsed).count());
  };

  // Each call gets its own counting view so the query totals are per call.
  QueryView v1(g), v2(g), v3(g), v4(g);
  report("tp", est_tranprob(v1, s, t, p, Rng(1)));
  report("tpc", est_tranprob_collision(v2, s, t, p, Rng(2)));
  report("mc", est_mc(v3, s, t, p, Rng(3)));
  report("mc2", est_mc2(v4, s, t, p, Rng(4)));
  return 0;
}
