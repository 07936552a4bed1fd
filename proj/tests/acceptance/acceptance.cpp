// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Usage: acceptance [--only N[,N...]]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "effres/effres.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace effres;

namespace {

constexpr std::uint64_t kSeed = 20240517;

// AppNumST on K5 at r = 2000, delta = 0.25: runs within 0.15 of ln(125)/5,
// out of 100, measured once on this implementation and pinned.
constexpr int kTreeBaseline = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string summary;
};

void detail_line(const std::string& text) { std::cout << "    " << text << "\n" << std::flush; }

std::string fmt(double x, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << x;
  return s.str();
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// Values recorded during the main criteria and recomputed for determinism.
struct Fingerprint {
  std::string label;
  std::function<double()> recompute;
  double value;
};
std::vector<Fingerprint> fingerprints;

void remember(std::string label, std::function<double()> run, double value) {
  fingerprints.push_back({std::move(label), std::move(run), value});
}

EstimatorParams params(double eps, std::optional<double> lambda = std::nullopt) {
  EstimatorParams p;
  p.epsilon = eps;
  p.lambda = lambda;
  p.seed = kSeed;
  return p;
}

// ---- 1: exact-oracle identities ----

Verdict exact_identities() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  auto check = [&](const Graph& g, Vertex s, Vertex t, double expected) {
    worst = std::max(worst, std::abs(effective_resistance_exact(g, s, t) - expected));
  };
  check(gen::complete(2), 0, 1, 1.0);
  check(gen::path(3), 0, 2, 2.0);
  check(gen::complete(3), 0, 1, 2.0 / 3.0);
  check(gen::complete(4), 0, 3, 0.5);

  double foster = 0.0;
  for (const auto& g : fixture::random_connected(20, 10, 100, kSeed, 0.3)) {
    const ResistanceOracle oracle(g);
    double sum = 0.0;
    for (auto [u, v] : g.edge_list()) sum += oracle.resistance(u, v);
    foster = std::max(foster, std::abs(sum - static_cast<double>(g.vertex_count() - 1)));
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = worst <= 1e-9 && foster <= 1e-6 && secs < 5.0;
  v.summary = "identity error " + fmt(worst, 3) + " (<= 1e-9), Foster deviation " + fmt(foster, 3) +
              " over 20 graphs (<= 1e-6), " + fmt(secs, 3) + " s (< 5 s)";
  return v;
}

// ---- 2: transition-probability estimators ----

struct SuiteGraph {
  std::string name;
  Graph graph;
  Vertex s, t;
  // Desk-scale sample count replacing the closed form, 0 for none.
  std::uint64_t walks_override = 0;
};

std::vector<SuiteGraph> transition_suite() {
  std::vector<SuiteGraph> suite;
  suite.push_back({"K3", gen::complete(3), 0, 1});
  suite.push_back({"K5", gen::complete(5), 0, 1});
  // lambda = 5/6 gives l = 27 and r = 5.6e6 walks per length at eps = 0.2,
  // about 1.4e11 steps over 100 runs; 2e4 walks per length keeps the
  // sampling error near 0.02.
  suite.push_back({"C5+chord", gen::cycle5_with_chord(), 1, 3, 20000});
  Rng rng(kSeed);
  for (std::size_t n : {20, 25, 30, 40, 50}) {
    Graph g = gen::gnp_connected(n, 0.5, rng);
    suite.push_back({"G(" + std::to_string(n) + ",1/2)", std::move(g), 0, static_cast<Vertex>(n - 1)});
  }
  return suite;
}

Verdict transition_estimators() {
  const auto t0 = Clock::now();
  Verdict v;
  int worst_tp = 100, worst_tpc = 100;
  for (const auto& item : transition_suite()) {
    const Graph& g = item.graph;
    const auto lam = spectral_lambda(g);
    if (lam.periodic) throw PreconditionError(item.name + " is bipartite");
    const double truth = effective_resistance_exact(g, item.s, item.t);
    auto p = params(0.2, lam.value);
    if (item.walks_override) {
      p.overrides.walks = item.walks_override;
      p.overrides.collision_walks = {item.walks_override};
    }
    const auto horizon = plan::transition_horizon(0.2, lam.value).length;

    // Hypothesis of the collision bound.
    const auto beta = default_beta_schedule(lam.value, g, horizon);
    bool beta_ok = true;
    for (std::uint64_t i = 0; i < horizon; ++i)
      for (Vertex x : {item.s, item.t})
        beta_ok = beta_ok && oracle::scaled_row_norm(g, x, static_cast<int>(i)) <= beta[i] * (1.0 + 1e-12);

    int tp = 0, tpc = 0;
    const Rng tp_streams = Rng(kSeed).substream(1);
    const Rng tpc_streams = Rng(kSeed).substream(2);
    const auto ti = Clock::now();
    const auto shared = std::make_shared<const Graph>(g);
    const Vertex s = item.s, t = item.t;
    for (std::uint64_t k = 0; k < 100; ++k) {
      auto run_tp = [shared, s, t, p, tp_streams, k] {
        QueryView view(*shared);
        return est_tranprob(view, s, t, p, tp_streams.substream(k)).value;
      };
      auto run_tpc = [shared, s, t, p, tpc_streams, k] {
        QueryView view(*shared);
        return est_tranprob_collision(view, s, t, p, tpc_streams.substream(k)).value;
      };
      const double a = run_tp();
      const double b = run_tpc();
      tp += std::abs(a - truth) <= 0.2;
      tpc += std::abs(b - truth) <= 0.2;
      if (k == 0) {
        remember("tp " + item.name, run_tp, a);
        remember("tpc " + item.name, run_tpc, b);
      }
    }
    worst_tp = std::min(worst_tp, tp);
    worst_tpc = std::min(worst_tpc, tpc);
    v.pass = v.pass && tp >= 85 && tpc >= 85 && beta_ok;
    detail_line(item.name + ": n=" + std::to_string(g.vertex_count()) + " lambda=" + fmt(lam.value) +
                " l=" + std::to_string(horizon) + " R=" + fmt(truth) + "  tp " + std::to_string(tp) +
                "/100, tpc " + std::to_string(tpc) + "/100, beta bound " + (beta_ok ? "holds" : "VIOLATED") +
                (item.walks_override ? ", walks overridden to " + std::to_string(item.walks_override) : "") + " (" +
                fmt(seconds_since(ti), 3) + " s)");
  }
  const double secs = seconds_since(t0);
  v.pass = v.pass && secs < 600.0;
  v.summary = "worst graph: tp " + std::to_string(worst_tp) + "/100, tpc " + std::to_string(worst_tpc) +
              "/100 within 0.2 (>= 85), " + fmt(secs, 4) + " s (< 600 s)";
  return v;
}

// ---- 3: commute-walk estimators ----

Verdict commute_estimators() {
  const auto t0 = Clock::now();
  constexpr std::uint64_t kWalks = 100000;
  double worst_z = 0.0;
  std::size_t checks = 0;
  std::uint64_t capped = 0;
  const std::vector<std::pair<std::string, Graph>> graphs{{"K4", gen::complete(4)}, {"C5", gen::cycle(5)}};
  for (const auto& [name, g] : graphs) {
    const ResistanceOracle oracle(g);
    for (auto [s, t] : g.edge_list()) {
      const double r = oracle.resistance(s, t);
      const Rng stream = Rng(kSeed).substream(3).substream(checks);

      auto p = params(0.1);
      p.gamma = 1.0;
      p.overrides.commute_walks = kWalks;
      QueryView mc_view(g);
      const auto mc = est_mc(mc_view, s, t, p, stream.substream(0));
      const double ds = static_cast<double>(std::min(g.raw_degree(s), g.raw_degree(t)));
      const double q = 1.0 / (r * ds);
      const double rate = static_cast<double>(mc.successes) / static_cast<double>(kWalks);
      worst_z = std::max(worst_z, std::abs(rate - q) / std::sqrt(q * (1.0 - q) / kWalks));

      p.overrides.edge_walks = kWalks;
      auto run_mc2 = [shared = std::make_shared<const Graph>(g), s, t, p, stream] {
        QueryView view(*shared);
        return est_mc2(view, s, t, p, stream.substream(1));
      };
      const auto mc2 = run_mc2();
      const double share = static_cast<double>(mc2.successes) / static_cast<double>(kWalks);
      worst_z = std::max(worst_z, std::abs(share - r) / std::sqrt(r * (1.0 - r) / kWalks));
      capped += mc.capped + mc2.capped;
      if (checks == 0) remember("mc2 K4 edge", [run_mc2] { return run_mc2().value; }, mc2.value);
      ++checks;
    }
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = worst_z <= 3.0 && secs < 120.0;
  v.summary = std::to_string(2 * checks) + " rate checks on every edge of K4 and C5 at 1e5 walks, largest deviation " +
              fmt(worst_z, 3) + " sigma (<= 3), " + std::to_string(capped) + " capped walks, " + fmt(secs, 3) +
              " s (< 120 s)";
  return v;
}

// ---- 4: commute-time identity ----

Verdict commute_time_identity() {
  const auto t0 = Clock::now();
  struct Case {
    std::string name;
    Graph g;
    Vertex s, t;
  };
  const std::vector<Case> cases{{"K3", gen::complete(3), 0, 1}, {"path-3", gen::path(3), 0, 2},
                                {"K4", gen::complete(4), 0, 1}};
  Verdict v;
  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const double two_m = 2.0 * static_cast<double>(c.g.edge_count());
    const double r = effective_resistance_exact(c.g, c.s, c.t);
    const Rng stream = Rng(kSeed).substream(4).substream(i);
    const auto sim = commute_time_sim(c.g, c.s, c.t, 100000, stream);
    const double z = std::abs(sim.mean / two_m - r) / (sim.standard_error / two_m);
    worst = std::max(worst, z);
    detail_line(c.name + ": kappa/2m = " + fmt(sim.mean / two_m, 6) + " +- " + fmt(sim.standard_error / two_m, 3) +
                ", R = " + fmt(r, 6));
    if (i == 0) {
      const Graph g = c.g;
      remember("commute time K3", [g, stream] { return commute_time_sim(g, 0, 1, 100000, stream).mean; },
               sim.mean);
    }
  }
  const double secs = seconds_since(t0);
  v.pass = worst <= 3.0 && secs < 60.0;
  v.summary = "largest deviation " + fmt(worst, 3) + " standard errors (<= 3), " + fmt(secs, 3) + " s (< 60 s)";
  return v;
}

// ---- 5: spanning-tree route ----

struct ExactTreeDensity {
  template <AdjacencyOracle G>
  double operator()(G& g, double, double, const EstimatorParams&, const Rng&) const {
    std::vector<std::pair<Vertex, Vertex>> edges;
    const auto n = static_cast<Vertex>(g.vertex_count());
    for (Vertex u = 0; u < n; ++u)
      for (std::uint64_t i = 0; i < g.degree(u); ++i) {
        const Vertex w = g.neighbor(u, i);
        if (u < w) edges.emplace_back(u, w);
      }
    return count_spanning_trees(Graph::from_edges(n, edges)).log_count / static_cast<double>(n);
  }
};

Verdict spanning_tree_route() {
  const auto t0 = Clock::now();
  std::vector<Graph> graphs{gen::complete(4), gen::cycle(5)};
  for (auto& g : fixture::random_connected(10, 4, 8, kSeed)) graphs.push_back(std::move(g));

  double tree_ratio = 0.0, stub = 0.0;
  std::size_t edges = 0;
  for (const auto& g : graphs) {
    const ResistanceOracle oracle(g);
    const auto trees = count_spanning_trees(g);
    for (auto [s, t] : g.edge_list()) {
      const auto merged = count_spanning_trees(contract_pair(g, s, t));
      using boost::multiprecision::cpp_rational;
      const double ratio = static_cast<double>(cpp_rational(*merged.exact, *trees.exact));
      const double r = oracle.resistance(s, t);
      tree_ratio = std::max(tree_ratio, std::abs(ratio - r));
      QueryView view(g);
      stub = std::max(stub, std::abs(est_spantree(view, s, t, 0.5, 0.5, params(0.5), Rng(kSeed), ExactTreeDensity{})
                                         .value -
                                     r));
      ++edges;
    }
  }
  detail_line("tree-count ratio vs R on " + std::to_string(edges) + " edges of " + std::to_string(graphs.size()) +
              " graphs: " + fmt(tree_ratio, 3) + "; exact-stub estimator: " + fmt(stub, 3));

  const auto k5 = std::make_shared<const Graph>(gen::complete(5));
  const double target = std::log(125.0) / 5.0;
  auto p = params(0.15);
  p.delta = 0.25;
  p.overrides.tree_range = 2000;
  const Rng streams = Rng(kSeed).substream(5);
  int good = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto run = [k5, p, streams, k] {
      QueryView view(*k5);
      return app_num_st(view, 0.15, 0.25, p, streams.substream(k));
    };
    const double z = run();
    good += std::abs(z - target) <= 0.15;
    if (k < 2) remember("tree density K5 run " + std::to_string(k), run, z);
  }
  detail_line("tree density on K5 (r = 2000, delta = 0.25): " + std::to_string(good) +
              "/100 within 0.15 of ln(125)/5, pinned baseline " + std::to_string(kTreeBaseline));
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = tree_ratio <= 1e-9 && stub <= 1e-9 && good >= 70 && good == kTreeBaseline && secs < 600.0;
  v.summary = "identities within " + fmt(std::max(tree_ratio, stub), 3) + " (<= 1e-9), K5 density " +
              std::to_string(good) + "/100 (>= 70, baseline " + std::to_string(kTreeBaseline) + "), " +
              fmt(secs, 3) + " s (< 600 s)";
  return v;
}

// ---- 6: scale comparison against the dense oracle ----

Graph sparse_random(std::size_t n, std::uint64_t salt) {
  Rng rng = Rng(kSeed).substream(6).substream(salt);
  return gen::gnp_connected_component(n, 10.0 / static_cast<double>(n), rng);
}

double dense_factor_seconds(const Graph& g) {
  const auto t0 = Clock::now();
  const auto llt = ::effres::detail::grounded_factor(g);
  if (llt.info() != Eigen::Success) throw OracleError("dense factorization failed");
  return seconds_since(t0);
}

double mean_queries(const bench::BenchResult& r) {
  double total = 0.0;
  for (const auto& rec : r.records) total += static_cast<double>(rec.deg_q + rec.nbr_q + rec.samp_q);
  return total / static_cast<double>(r.records.size());
}

std::string cli_path() {
#ifdef EFFRES_CLI_PATH
  return EFFRES_CLI_PATH;
#else
  return "effres";
#endif
}

// Runs the CLI on a generated SNAP file and checks the error-distribution CSV.
bool cli_reproduces_csv(std::string& note) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("effres_acceptance_" + std::to_string(kSeed));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path graph = dir / "gnp2000.txt";
  const fs::path out = dir / "run.csv";
  const std::string cli = cli_path();
  const std::string gen_cmd = "\"" + cli + "\" generate --model gnp --n 2000 --degree 10 --seed 3 --out \"" +
                              graph.string() + "\" 2>/dev/null";
  const std::string bench_cmd = "\"" + cli + "\" bench \"" + graph.string() +
                                "\" --algo tp --eps 0.1 --lambda 0.1 --queries 200 --seed 5 --out \"" + out.string() +
                                "\" >/dev/null 2>&1";
  if (std::system(gen_cmd.c_str()) != 0 || std::system(bench_cmd.c_str()) != 0) {
    note = "CLI invocation failed (" + cli + ")";
    return false;
  }
  std::ifstream records_in(out);
  std::ifstream summary_in(bench::summary_path(out.string()));
  const auto records = bench::read_records(records_in);
  const auto rows = bench::parse_csv(summary_in);
  std::size_t sorted_errors = 0;
  std::string fraction;
  double previous = -1.0;
  bool ascending = true;
  for (const auto& row : rows) {
    if (row.size() != 3) continue;
    if (row[0] == "rel_error_sorted") {
      const double x = std::stod(row[2]);
      ascending = ascending && x >= previous;
      previous = x;
      ++sorted_errors;
    }
    if (row[0] == "stats" && row[1] == "fraction_rel_error_le_0.1") fraction = row[2];
  }
  fs::remove_all(dir);
  note = "CLI wrote " + std::to_string(records.size()) + " records, " + std::to_string(sorted_errors) +
         " sorted relative errors, fraction <= 0.1 = " + fraction;
  return records.size() == 200 && sorted_errors == 200 && ascending && !fraction.empty();
}

Verdict scale_comparison() {
  Verdict v;
  const auto tg = Clock::now();
  const Graph big = sparse_random(100000, 2);
  detail_line("G(1e5, 10/n), largest component: n=" + std::to_string(big.vertex_count()) +
              " m=" + std::to_string(big.edge_count()) + " (" + fmt(seconds_since(tg), 3) + " s)");

  bool refused = false;
  try {
    (void)effective_resistance_exact(big, 0, 1);
  } catch (const OracleError&) {
    refused = true;
  }

  const double t3 = dense_factor_seconds(sparse_random(1000, 0));
  const double t4 = dense_factor_seconds(sparse_random(10000, 1));
  const double slope = std::log10(t4 / t3);
  const double t5 = t4 * std::pow(10.0, slope);
  detail_line("dense factorization: n=1e3 " + fmt(t3, 3) + " s, n=1e4 " + fmt(t4, 3) + " s, log-log slope " +
              fmt(slope, 3) + ", extrapolated n=1e5 " + fmt(t5, 4) + " s; oracle " +
              (refused ? "refused" : "did not refuse") + " n=1e5");
  const double budget = t5 / 100.0;

  bench::BenchConfig cfg;
  cfg.dataset = "gnp1e5";
  cfg.algo = bench::Algo::tp;
  cfg.queries = 1000;
  cfg.ground_truth = false;
  cfg.seed = kSeed;
  cfg.params = params(0.1, 0.1);
  const auto tp = bench::run_bench(big, cfg);
  std::int64_t tp_ns = 0;
  for (const auto& r : tp.records) tp_ns += r.wall_ns;
  const double tp_secs = static_cast<double>(tp_ns) * 1e-9;
  detail_line("tp (eps = lambda = 0.1): 1000 queries in " + fmt(tp_secs, 4) + " s, " +
              std::to_string(tp.summary.successes) + " succeeded");
  remember("tp n=1e5 query 0", [shared = std::make_shared<const Graph>(big), cfg] {
    auto c = cfg;
    c.queries = 1;
    return bench::run_bench(*shared, c).records.front().estimate;
  }, tp.records.front().estimate);

  // Same edge sample and per-query streams as run_bench, stopped once the
  // measured time leaves no doubt about the projection.
  Rng edge_rng = Rng(kSeed).substream(0);
  const auto edges = bench::sample_edge_queries(big, 1000, edge_rng);
  const Rng query_streams = Rng(kSeed).substream(1);
  auto mc2_params = params(0.1);
  mc2_params.gamma = 0.1;
  mc2_params.delta = 1.0 / 3.0;
  const auto tm = Clock::now();
  std::size_t done = 0;
  std::uint64_t mc2_capped = 0;
  while (done < edges.size() && seconds_since(tm) < 120.0) {
    QueryView view(big);
    const auto e = est_mc2(view, edges[done].first, edges[done].second, mc2_params, query_streams.substream(done));
    mc2_capped += e.capped;
    ++done;
  }
  const double mc2_measured = seconds_since(tm);
  const double mc2_secs = mc2_measured / static_cast<double>(done) * static_cast<double>(edges.size());
  detail_line("mc2 (eps = gamma = 0.1, delta = 1/3, M0 = " +
              std::to_string(plan::edge_walks(1.0 / 3.0, 0.1, 0.1)) + "): " + std::to_string(done) +
              " queries in " + fmt(mc2_measured, 4) + " s, " + std::to_string(mc2_capped) + " capped walks" +
              (done < edges.size() ? ", projected 1000 queries " + fmt(mc2_secs, 4) + " s" : ""));

  cfg.queries = 200;
  const double q5 = mean_queries(bench::run_bench(big, cfg));
  const double q3 = mean_queries(bench::run_bench(sparse_random(1000, 0), cfg));
  const double query_ratio = std::max(q5, q3) / std::min(q5, q3);
  detail_line("tp graph queries per estimate: n=1e3 " + fmt(q3, 8) + ", n=1e5 " + fmt(q5, 8) + ", ratio " +
              fmt(query_ratio, 4));

  std::string cli_note;
  const bool cli_ok = cli_reproduces_csv(cli_note);
  detail_line(cli_note);

  const bool tp_ok = tp_secs * 100.0 <= t5;
  const bool mc2_ok = mc2_secs * 100.0 <= t5;
  v.pass = refused && tp_ok && mc2_ok && query_ratio < 2.0 && cli_ok;
  v.summary = "100x budget " + fmt(budget, 4) + " s: tp " + fmt(tp_secs, 4) + " s (" + (tp_ok ? "within" : "over") +
              "), mc2 " + fmt(mc2_secs, 4) + " s (" + (mc2_ok ? "within" : "over") + "); query ratio " +
              fmt(query_ratio, 3) + " (< 2); CLI CSV " + (cli_ok ? "ok" : "FAILED");
  return v;
}

// ---- 7: determinism ----

Verdict determinism() {
  std::size_t mismatches = 0;
  for (const auto& f : fingerprints) {
    const double again = f.recompute();
    if (!same_bits(again, f.value)) {
      ++mismatches;
      detail_line("mismatch: " + f.label + " " + fmt(f.value, 17) + " vs " + fmt(again, 17));
    }
  }

  // Concurrency must not change any estimate either.
  const Graph g = sparse_random(1000, 0);
  bench::BenchConfig cfg;
  cfg.algo = bench::Algo::tpc;
  cfg.queries = 30;
  cfg.ground_truth = false;
  cfg.seed = kSeed;
  cfg.params = params(0.2, 0.5);
  const auto serial = bench::run_bench(g, cfg);
  cfg.parallel = 3;
  const auto threaded = bench::run_bench(g, cfg);
  std::size_t parallel_mismatches = 0;
  for (std::size_t i = 0; i < serial.records.size(); ++i)
    parallel_mismatches += !same_bits(serial.records[i].estimate, threaded.records[i].estimate) ||
                           serial.records[i].nbr_q != threaded.records[i].nbr_q;

  Verdict v;
  v.pass = fingerprints.size() > 0 && mismatches == 0 && parallel_mismatches == 0;
  v.summary = std::to_string(fingerprints.size()) + " recorded estimates recomputed, " + std::to_string(mismatches) +
              " differ; 30 queries serial vs 3 threads, " + std::to_string(parallel_mismatches) + " differ";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) {
      std::stringstream list(argv[++i]);
      std::string item;
      while (std::getline(list, item, ',')) only.insert(std::stoi(item));
    }
  }
  const std::vector<std::pair<std::string, Verdict (*)()>> criteria{
      {"exact-oracle identities", exact_identities},
      {"transition estimators at oracle lambda, eps = 0.2", transition_estimators},
      {"commute-walk success rates", commute_estimators},
      {"commute-time identity", commute_time_identity},
      {"spanning-tree route", spanning_tree_route},
      {"scale against the dense oracle", scale_comparison},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.contains(id)) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << id << " " << criteria[i].first << ": " << v.summary << "\n"
              << std::flush;
  }
  return failed == 0 ? 0 : 1;
}
