// effres: benchmark harness and exact oracle front end.
//
//   effres bench graph.txt --algo tp --eps 0.1 --lambda 0.1 --out run.csv
//   effres exact graph.txt --s 0 --t 5
//   effres cache graph.txt graph.rstg
//   effres generate --model gnp --n 100000 --degree 10 --out g.txt

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "effres/effres.hpp"

namespace {

using namespace effres;

struct BenchArgs {
  std::string dataset;
  std::string name;
  std::string algo = "tp";
  double eps = 0.1;
  std::string lambda;
  double gamma = 0.1;
  double delta = 1.0 / 3.0;
  std::uint64_t queries = 1000;
  std::string pairs_file;
  std::uint64_t seed = 0;
  std::string out = "effres.csv";
  std::size_t exact_cap = 20000;
  std::string ground_truth = "exact";
  unsigned parallel = 1;
  std::uint64_t median = 1;
  bool keep_multi = false;
  bool no_lcc = false;
  std::uint64_t step_cap = 0;
  std::uint64_t ell = 0, r = 0, n0 = 0, m0 = 0, st_r = 0, st_n = 0, st_samples = 0;
  std::vector<std::uint64_t> ri;
};

std::string basename_of(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_bench_command(const BenchArgs& a) {
  bench::preflight_output(a.out);

  bench::BenchConfig cfg;
  cfg.dataset = a.name.empty() ? basename_of(a.dataset) : a.name;
  cfg.algo = bench::parse_algo(a.algo);
  cfg.queries = a.queries;
  cfg.seed = a.seed;
  cfg.parallel = a.parallel;
  cfg.median = a.median;
  cfg.exact.dense_cap = a.exact_cap;
  cfg.load = {.largest_component = !a.no_lcc, .keep_multi = a.keep_multi};
  if (a.ground_truth != "exact" && a.ground_truth != "none")
    throw ParameterError("--ground-truth must be 'exact' or 'none'");
  cfg.ground_truth = a.ground_truth == "exact";

  auto& p = cfg.params;
  p.epsilon = a.eps;
  p.gamma = a.gamma;
  p.delta = a.delta;
  p.seed = a.seed;
  if (a.step_cap) p.step_cap = a.step_cap;
  if (a.ell) p.overrides.horizon = a.ell;
  if (a.r) p.overrides.walks = a.r;
  if (!a.ri.empty()) p.overrides.collision_walks = a.ri;
  if (a.n0) p.overrides.commute_walks = a.n0;
  if (a.m0) p.overrides.edge_walks = a.m0;
  if (a.st_r) p.overrides.tree_range = a.st_r;
  if (a.st_n) p.overrides.tree_walks = a.st_n;
  if (a.st_samples) p.overrides.tree_degree_samples = a.st_samples;

  const auto t_load = std::chrono::steady_clock::now();
  const Graph g = load_graph_file(a.dataset, cfg.load);
  std::cerr << "loaded " << cfg.dataset << ": n=" << g.vertex_count() << " m=" << g.edge_count() << " in "
            << seconds_since(t_load) << " s\n";

  if (!a.lambda.empty()) {
    if (a.lambda == "exact") {
      const auto lam = spectral_lambda(g, cfg.exact);
      if (lam.periodic) std::cerr << "warning: walk is periodic (bipartite graph), lambda = 1\n";
      p.lambda = lam.value;
      std::cerr << "lambda (exact) = " << lam.value << "\n";
    } else {
      p.lambda = std::stod(a.lambda);
    }
  }
  if (!a.pairs_file.empty()) cfg.pairs = bench::read_pairs_file(a.pairs_file);

  const auto result = bench::run_bench(g, cfg);
  bench::emit_csv(result.records, result.summary, a.out);

  const auto& s = result.summary;
  std::int64_t total = 0;
  for (auto ns : s.runtimes_ns) total += ns;
  std::cout << "queries " << s.queries << ", successes " << s.successes << ", total query time "
            << static_cast<double>(total) * 1e-9 << " s";
  if (!s.runtimes_ns.empty())
    std::cout << ", median " << static_cast<double>(bench::quantile(s.runtimes_ns, 0.5)) * 1e-9 << " s";
  std::cout << "\n";
  if (!s.rel_errors.empty())
    std::cout << "relative error <= 0.1 for " << s.fraction_within(0.1) * 100.0 << "% of " << s.rel_errors.size()
              << " queries with ground truth\n";
  std::cout << "wrote " << a.out << " and " << bench::summary_path(a.out) << "\n";
  return 0;
}

int run_exact_command(const std::string& dataset, RawId s_raw, RawId t_raw, std::size_t cap, bool keep_multi,
                      bool no_lcc, std::uint64_t commute_trials, std::uint64_t seed) {
  const Graph g = load_graph_file(dataset, {.largest_component = !no_lcc, .keep_multi = keep_multi});
  const ExactOptions opts{.dense_cap = cap};
  const auto [s, t] = bench::resolve_pairs(g, {{s_raw, t_raw}}).front();
  const double r = effective_resistance_exact(g, s, t, opts);
  const auto lam = spectral_lambda(g, opts);
  const auto trees = count_spanning_trees(g, opts);
  std::cout << "n " << g.vertex_count() << "\nm " << g.edge_count() << "\nR " << r << "\nlambda " << lam.value
            << (lam.periodic ? " (periodic)" : "") << "\nlog_spanning_trees " << trees.log_count << "\n";
  if (trees.exact) std::cout << "spanning_trees " << *trees.exact << "\n";
  std::cout << "commute_time " << 2.0 * static_cast<double>(g.edge_count()) * r << "\n";
  if (commute_trials > 0) {
    const auto sim = commute_time_sim(g, s, t, commute_trials, Rng(seed));
    std::cout << "commute_time_simulated " << sim.mean << " +- " << sim.standard_error << "\n";
  }
  return 0;
}

int run_generate_command(const std::string& model, std::size_t n, double degree, std::size_t links,
                         std::uint64_t seed, const std::string& out) {
  Rng rng(seed);
  Graph g;
  if (model == "gnp")
    g = gen::gnp_connected_component(n, degree / static_cast<double>(n), rng);
  else if (model == "ba")
    g = gen::barabasi_albert(n, links, rng);
  else if (model == "complete")
    g = gen::complete(n);
  else if (model == "cycle")
    g = gen::cycle(n);
  else if (model == "path")
    g = gen::path(n);
  else
    throw ParameterError("unknown model '" + model + "' (expected gnp|ba|complete|cycle|path)");
  std::ofstream file(out);
  if (!file) throw Error("cannot write '" + out + "'");
  file << "# " << model << " n=" << g.vertex_count() << " m=" << g.edge_count() << " seed=" << seed << "\n";
  for (auto [u, v] : g.edge_list()) file << g.original_id(u) << '\t' << g.original_id(v) << '\n';
  std::cerr << "wrote " << out << ": n=" << g.vertex_count() << " m=" << g.edge_count() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local effective-resistance estimators: benchmark harness and exact oracle"};
  app.require_subcommand(1);

  BenchArgs b;
  auto* bench_cmd = app.add_subcommand("bench", "Run an estimator on sampled edge queries and write CSV");
  bench_cmd->add_option("dataset", b.dataset, "SNAP edge list or graph cache")->required();
  bench_cmd->add_option("--name", b.name, "Dataset name for the CSV (default: file name)");
  bench_cmd->add_option("--algo", b.algo, "tp | tpc | mc | mc2 | st | exact")->capture_default_str();
  bench_cmd->add_option("--eps", b.eps, "Error parameter epsilon")->capture_default_str();
  bench_cmd->add_option("--lambda", b.lambda, "Spectral parameter, a number or 'exact'");
  bench_cmd->add_option("--gamma", b.gamma, "Resistance threshold (mc, mc2)")->capture_default_str();
  bench_cmd->add_option("--delta", b.delta, "Failure probability (mc2, st)")->capture_default_str();
  bench_cmd->add_option("--queries", b.queries, "Edge queries sampled with replacement")->capture_default_str();
  bench_cmd->add_option("--pairs-file", b.pairs_file, "Explicit 's t' pairs in original ids");
  bench_cmd->add_option("--seed", b.seed, "Master seed")->capture_default_str();
  bench_cmd->add_option("--out", b.out, "Output CSV; the summary goes to <stem>.summary.csv")->capture_default_str();
  bench_cmd->add_option("--exact-cap", b.exact_cap, "Largest n for the dense oracle")->capture_default_str();
  bench_cmd->add_option("--ground-truth", b.ground_truth, "exact | none")->capture_default_str();
  bench_cmd->add_option("--parallel", b.parallel, "Queries run concurrently")->capture_default_str();
  bench_cmd->add_option("--median", b.median, "Odd repeat count for median boosting")->capture_default_str();
  bench_cmd->add_option("--step-cap", b.step_cap, "Step cap for open-ended walks (default 20 m max(gamma, 1))");
  bench_cmd->add_flag("--keep-multi", b.keep_multi, "Keep duplicate edges as parallel edges");
  bench_cmd->add_flag("--no-lcc", b.no_lcc, "Do not restrict to the largest connected component");
  bench_cmd->add_option("--override-ell", b.ell, "Walk horizon l (tp, tpc)");
  bench_cmd->add_option("--override-r", b.r, "Walks per length (tp)");
  bench_cmd->add_option("--override-ri", b.ri, "Walks per length (tpc); one value applies to all")->delimiter(',');
  bench_cmd->add_option("--override-n0", b.n0, "Walk count N0 (mc)");
  bench_cmd->add_option("--override-m0", b.m0, "Walk count M0 (mc2)");
  bench_cmd->add_option("--override-st-r", b.st_r, "Length range r (st)");
  bench_cmd->add_option("--override-st-n", b.st_n, "Walk count N (st)");
  bench_cmd->add_option("--override-st-samples", b.st_samples, "Degree samples (st)");

  std::string exact_dataset;
  RawId exact_s = 0, exact_t = 0;
  std::size_t exact_cap = 20000;
  bool exact_multi = false, exact_no_lcc = false;
  std::uint64_t commute_trials = 0, exact_seed = 0;
  auto* exact_cmd = app.add_subcommand("exact", "Exact resistance, lambda, spanning trees and commute time");
  exact_cmd->add_option("dataset", exact_dataset, "SNAP edge list or graph cache")->required();
  exact_cmd->add_option("--s", exact_s, "Source (original id)")->required();
  exact_cmd->add_option("--t", exact_t, "Target (original id)")->required();
  exact_cmd->add_option("--exact-cap", exact_cap, "Largest n for the dense oracle")->capture_default_str();
  exact_cmd->add_option("--commute-trials", commute_trials, "Also simulate the commute time");
  exact_cmd->add_option("--seed", exact_seed, "Seed for the simulation");
  exact_cmd->add_flag("--keep-multi", exact_multi, "Keep duplicate edges as parallel edges");
  exact_cmd->add_flag("--no-lcc", exact_no_lcc, "Do not restrict to the largest connected component");

  std::string cache_in, cache_out;
  bool cache_multi = false, cache_no_lcc = false;
  auto* cache_cmd = app.add_subcommand("cache", "Convert an edge list to the binary graph cache");
  cache_cmd->add_option("input", cache_in, "SNAP edge list")->required();
  cache_cmd->add_option("output", cache_out, "Cache file")->required();
  cache_cmd->add_flag("--keep-multi", cache_multi, "Keep duplicate edges as parallel edges");
  cache_cmd->add_flag("--no-lcc", cache_no_lcc, "Do not restrict to the largest connected component");

  std::string model = "gnp", gen_out;
  std::size_t gen_n = 1000, gen_links = 5;
  double gen_degree = 10.0;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic graph as a SNAP edge list");
  gen_cmd->add_option("--model", model, "gnp | ba | complete | cycle | path")->capture_default_str();
  gen_cmd->add_option("--n", gen_n, "Vertex count")->capture_default_str();
  gen_cmd->add_option("--degree", gen_degree, "Expected degree (gnp)")->capture_default_str();
  gen_cmd->add_option("--links", gen_links, "Edges per new vertex (ba)")->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Output edge list")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench_cmd) return run_bench_command(b);
    if (*exact_cmd)
      return run_exact_command(exact_dataset, exact_s, exact_t, exact_cap, exact_multi, exact_no_lcc, commute_trials,
                               exact_seed);
    if (*cache_cmd) {
      const Graph g = load_edge_list_file(cache_in, {.largest_component = !cache_no_lcc, .keep_multi = cache_multi});
      std::ofstream out(cache_out, std::ios::binary);
      if (!out) throw Error("cannot write '" + cache_out + "'");
      write_graph_cache(out, g);
      std::cerr << "wrote " << cache_out << ": n=" << g.vertex_count() << " m=" << g.edge_count() << "\n";
      return 0;
    }
    if (*gen_cmd) return run_generate_command(model, gen_n, gen_degree, gen_links, gen_seed, gen_out);
  } catch (const effres::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
