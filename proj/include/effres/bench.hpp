#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "effres/commute.hpp"
#include "effres/errors.hpp"
#include "effres/estimate.hpp"
#include "effres/exact.hpp"
#include "effres/graph.hpp"
#include "effres/graph_io.hpp"
#include "effres/median.hpp"
#include "effres/query.hpp"
#include "effres/rng.hpp"
#include "effres/spanning_tree.hpp"
#include "effres/transition.hpp"

namespace effres::bench {

enum class Algo { tp, tpc, mc, mc2, st, exact };

inline std::string_view algo_name(Algo a) {
  switch (a) {
    case Algo::tp: return "tp";
    case Algo::tpc: return "tpc";
    case Algo::mc: return "mc";
    case Algo::mc2: return "mc2";
    case Algo::st: return "st";
    case Algo::exact: return "exact";
  }
  return "?";
}

inline Algo parse_algo(std::string_view name) {
  for (Algo a : {Algo::tp, Algo::tpc, Algo::mc, Algo::mc2, Algo::st, Algo::exact})
    if (algo_name(a) == name) return a;
  throw ParameterError("unknown algorithm '" + std::string(name) + "' (expected tp|tpc|mc|mc2|st|exact)");
}

struct BenchConfig {
  std::string dataset = "graph";
  Algo algo = Algo::tp;
  std::uint64_t queries = 1000;
  /// Explicit query pairs in original ids; empty means sampled edges.
  std::vector<std::pair<RawId, RawId>> pairs;
  EstimatorParams params;
  bool ground_truth = true;
  ExactOptions exact;
  std::uint64_t seed = 0;
  unsigned parallel = 1;
  /// Odd repeat count for median boosting; 1 disables it.
  std::uint64_t median = 1;
  /// Recorded in the summary metadata only.
  LoadOptions load;
};

struct QueryRecord {
  std::string dataset;
  std::string algo;
  RawId s = 0;
  RawId t = 0;
  double estimate = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> exact;
  std::optional<double> rel_error;
  std::uint64_t deg_q = 0;
  std::uint64_t nbr_q = 0;
  std::uint64_t samp_q = 0;
  std::int64_t wall_ns = 0;
  bool success = false;
  /// Error or flag text; lands in the summary file, not the CSV row.
  std::string note;

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

struct Summary {
  std::vector<std::int64_t> runtimes_ns;  // ascending
  std::vector<double> rel_errors;         // ascending, successful queries with ground truth
  std::uint64_t queries = 0;
  std::uint64_t successes = 0;
  bool concurrent = false;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::pair<std::uint64_t, std::string>> notes;  // query index, text

  double fraction_within(double tolerance) const {
    if (rel_errors.empty()) return 0.0;
    const auto it = std::upper_bound(rel_errors.begin(), rel_errors.end(), tolerance);
    return static_cast<double>(it - rel_errors.begin()) / static_cast<double>(rel_errors.size());
  }
};

struct BenchResult {
  std::vector<QueryRecord> records;
  Summary summary;
};

/// Nearest-rank quantile of an ascending sequence; q in [0, 1].
template <class T>
T quantile(const std::vector<T>& sorted, double q) {
  if (sorted.empty()) throw PreconditionError("quantile of an empty sequence");
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[rank == 0 ? 0 : rank - 1];
}

inline constexpr std::array<double, 8> kQuantiles{0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0};

/// `count` edges drawn uniformly with replacement, endpoints in stored order.
inline std::vector<std::pair<Vertex, Vertex>> sample_edge_queries(const Graph& g, std::uint64_t count, Rng& rng) {
  const auto edges = g.edge_list();
  if (edges.empty()) throw PreconditionError("edge sampling needs at least one edge");
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(count);
  for (std::uint64_t q = 0; q < count; ++q) out.push_back(edges[rng.below(edges.size())]);
  return out;
}

/// Reads "s t" pairs of original ids; '#' comments and blank lines skipped.
inline std::vector<std::pair<RawId, RawId>> read_pairs(std::istream& in) {
  std::vector<std::pair<RawId, RawId>> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view rest = ::effres::detail::trim(line);
    if (rest.empty() || rest.front() == '#') continue;
    std::string_view a, b;
    if (!::effres::detail::next_token(rest, a) || !::effres::detail::next_token(rest, b))
      throw ParseError("expected two vertex ids", number);
    out.emplace_back(::effres::detail::parse_id(a, number), ::effres::detail::parse_id(b, number));
  }
  return out;
}

inline std::vector<std::pair<RawId, RawId>> read_pairs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pairs file '" + path + "'");
  return read_pairs(in);
}

inline std::vector<std::pair<Vertex, Vertex>> resolve_pairs(const Graph& g,
                                                            const std::vector<std::pair<RawId, RawId>>& raw) {
  std::unordered_map<RawId, Vertex> index;
  index.reserve(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) index.emplace(g.original_id(v), v);
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(raw.size());
  for (auto [a, b] : raw) {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    if (ia == index.end() || ib == index.end())
      throw QueryError("query pair (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") references a vertex missing from the loaded graph");
    out.emplace_back(ia->second, ib->second);
  }
  return out;
}

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline Estimate run_estimator(const Graph& g, const BenchConfig& cfg, const ResistanceOracle* oracle, Vertex s,
                              Vertex t, const Rng& stream, AccessStats& access) {
  auto once = [&](const Rng& rng) -> Estimate {
    QueryView view(g);
    Estimate e;
    switch (cfg.algo) {
      case Algo::tp: e = est_tranprob(view, s, t, cfg.params, rng); break;
      case Algo::tpc: e = est_tranprob_collision(view, s, t, cfg.params, rng); break;
      case Algo::mc: e = est_mc(view, s, t, cfg.params, rng); break;
      case Algo::mc2: e = est_mc2(view, s, t, cfg.params, rng); break;
      case Algo::st:
        e = est_spantree(view, s, t, cfg.params.epsilon, cfg.params.delta, cfg.params, rng);
        break;
      case Algo::exact:
        ::effres::detail::check_pair(view, s, t);
        e.value = oracle->resistance(s, t);
        break;
    }
    access += view.access_stats();
    return e;
  };
  if (cfg.median <= 1) return once(stream);
  return median_boost(once, cfg.median, stream);
}

inline void fill_meta(const Graph& g, const BenchConfig& cfg, Summary& summary) {
  auto& m = summary.meta;
  const auto& p = cfg.params;
  m.emplace_back("dataset", cfg.dataset);
  m.emplace_back("algo", std::string(algo_name(cfg.algo)));
  m.emplace_back("vertices", std::to_string(g.vertex_count()));
  m.emplace_back("edges", std::to_string(g.edge_count()));
  m.emplace_back("query_mode", cfg.pairs.empty() ? "sampled_edges" : "pairs_file");
  m.emplace_back("seed", std::to_string(cfg.seed));
  m.emplace_back("epsilon", format_double(p.epsilon));
  m.emplace_back("lambda", p.lambda ? format_double(*p.lambda) : "");
  m.emplace_back("gamma", format_double(p.gamma));
  m.emplace_back("delta", format_double(p.delta));
  m.emplace_back("median", std::to_string(cfg.median));
  m.emplace_back("ground_truth", cfg.ground_truth ? "exact" : "none");
  m.emplace_back("largest_component", cfg.load.largest_component ? "true" : "false");
  m.emplace_back("keep_multi", cfg.load.keep_multi ? "true" : "false");
  m.emplace_back("parallel", std::to_string(cfg.parallel));
  m.emplace_back("concurrent_timing", summary.concurrent ? "true" : "false");
}

}  // namespace detail

/// Runs every query of `cfg` against `g`. Query q draws from
/// Rng(seed).substream(1).substream(q); edge sampling uses substream(0).
inline BenchResult run_bench(const Graph& g, const BenchConfig& cfg) {
  if (cfg.queries == 0 && cfg.pairs.empty()) throw ParameterError("query count must be at least 1");
  if (cfg.parallel == 0) throw ParameterError("parallelism must be at least 1");
  if (cfg.median == 0 || cfg.median % 2 == 0) throw ParameterError("median repeats must be odd");

  const Rng master(cfg.seed);
  std::vector<std::pair<Vertex, Vertex>> queries;
  if (cfg.pairs.empty()) {
    Rng sampler = master.substream(0);
    queries = sample_edge_queries(g, cfg.queries, sampler);
  } else {
    queries = resolve_pairs(g, cfg.pairs);
  }

  std::optional<ResistanceOracle> oracle;
  if (cfg.ground_truth || cfg.algo == Algo::exact) oracle.emplace(g, cfg.exact);

  BenchResult out;
  out.records.resize(queries.size());
  const Rng query_streams = master.substream(1);
  const std::string algo(algo_name(cfg.algo));

  auto run_one = [&](std::size_t q) {
    auto [s, t] = queries[q];
    QueryRecord& rec = out.records[q];
    rec.dataset = cfg.dataset;
    rec.algo = algo;
    rec.s = g.original_id(s);
    rec.t = g.original_id(t);
    AccessStats access;
    ::effres::detail::Stopwatch clock;
    try {
      const Estimate e = detail::run_estimator(g, cfg, oracle ? &*oracle : nullptr, s, t,
                                               query_streams.substream(q), access);
      rec.wall_ns = clock.elapsed().count();
      rec.estimate = e.value;
      rec.success = e.success;
      std::string note = e.message;
      for (const auto& f : e.flags) note += (note.empty() ? "" : "; ") + f;
      rec.note = std::move(note);
    } catch (const Error& err) {
      rec.wall_ns = clock.elapsed().count();
      rec.success = false;
      rec.note = err.what();
    }
    rec.deg_q = access.degree_queries;
    rec.nbr_q = access.neighbor_queries;
    rec.samp_q = access.vertex_samples;
    if (oracle && s != t) {
      const double r = oracle->resistance(s, t);
      rec.exact = r;
      if (rec.success && r > 0.0) rec.rel_error = std::abs(r - rec.estimate) / r;
    }
  };

  if (cfg.parallel == 1) {
    for (std::size_t q = 0; q < queries.size(); ++q) run_one(q);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < cfg.parallel; ++w)
      workers.emplace_back([&] {
        for (std::size_t q; (q = next.fetch_add(1)) < queries.size();) run_one(q);
      });
  }

  Summary& sum = out.summary;
  sum.queries = out.records.size();
  sum.concurrent = cfg.parallel > 1;
  for (std::size_t q = 0; q < out.records.size(); ++q) {
    const auto& rec = out.records[q];
    sum.runtimes_ns.push_back(rec.wall_ns);
    if (rec.success) ++sum.successes;
    if (rec.rel_error) sum.rel_errors.push_back(*rec.rel_error);
    if (!rec.note.empty()) sum.notes.emplace_back(q, rec.note);
  }
  std::sort(sum.runtimes_ns.begin(), sum.runtimes_ns.end());
  std::sort(sum.rel_errors.begin(), sum.rel_errors.end());
  detail::fill_meta(g, cfg, sum);
  return out;
}

// ---- CSV ----

inline constexpr std::string_view kCsvHeader =
    "dataset,algo,s,t,estimate,exact,rel_error,deg_q,nbr_q,samp_q,wall_ns,success";

inline std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string summary_path(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of("/\\");
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return path.substr(0, dot) + ".summary.csv";
  return path + ".summary.csv";
}

/// Fails early if `path` or its summary sibling cannot be opened for writing.
inline void preflight_output(const std::string& path) {
  for (const auto& p : {path, summary_path(path)}) {
    std::ofstream probe(p, std::ios::app);
    if (!probe) throw Error("cannot write output file '" + p + "'");
  }
}

inline void write_records(std::ostream& out, const std::vector<QueryRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << csv_field(r.dataset) << ',' << csv_field(r.algo) << ',' << r.s << ',' << r.t << ',';
    if (!std::isnan(r.estimate)) out << detail::format_double(r.estimate);
    out << ',';
    if (r.exact) out << detail::format_double(*r.exact);
    out << ',';
    if (r.rel_error) out << detail::format_double(*r.rel_error);
    out << ',' << r.deg_q << ',' << r.nbr_q << ',' << r.samp_q << ',' << r.wall_ns << ','
        << (r.success ? "true" : "false") << '\n';
  }
}

inline void write_summary(std::ostream& out, const Summary& s) {
  out << "section,key,value\n";
  auto row = [&](std::string_view section, std::string_view key, std::string_view value) {
    out << csv_field(section) << ',' << csv_field(key) << ',' << csv_field(value) << '\n';
  };
  for (const auto& [k, v] : s.meta) row("meta", k, v);
  row("stats", "queries", std::to_string(s.queries));
  row("stats", "successes", std::to_string(s.successes));
  row("stats", "with_ground_truth", std::to_string(s.rel_errors.size()));
  row("stats", "fraction_rel_error_le_0.1", detail::format_double(s.fraction_within(0.1)));
  std::int64_t total = 0;
  for (auto ns : s.runtimes_ns) total += ns;
  row("stats", "total_wall_ns", std::to_string(total));
  for (double q : kQuantiles) {
    const std::string key = "q" + detail::format_double(q);
    if (!s.runtimes_ns.empty()) row("runtime_ns_quantile", key, std::to_string(quantile(s.runtimes_ns, q)));
    if (!s.rel_errors.empty()) row("rel_error_quantile", key, detail::format_double(quantile(s.rel_errors, q)));
  }
  for (std::size_t i = 0; i < s.runtimes_ns.size(); ++i)
    row("runtime_ns_sorted", std::to_string(i), std::to_string(s.runtimes_ns[i]));
  for (std::size_t i = 0; i < s.rel_errors.size(); ++i)
    row("rel_error_sorted", std::to_string(i), detail::format_double(s.rel_errors[i]));
  for (const auto& [q, note] : s.notes) row("note", std::to_string(q), note);
}

/// Writes `path` and its `.summary.csv` sibling.
inline void emit_csv(const std::vector<QueryRecord>& records, const Summary& summary, const std::string& path) {
  preflight_output(path);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    write_records(out, records);
    if (!out) throw Error("failed writing '" + path + "'");
  }
  const auto side = summary_path(path);
  std::ofstream out(side, std::ios::binary | std::ios::trunc);
  write_summary(out, summary);
  if (!out) throw Error("failed writing '" + side + "'");
}

/// RFC-4180 reader: rows of unquoted fields.
inline std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (int ch; (ch = in.get()) != EOF;) {
    const char c = static_cast<char>(ch);
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", rows.size() + 1);
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Inverse of write_records; `note` is not part of the row format.
inline std::vector<QueryRecord> read_records(std::istream& in) {
  const auto rows = parse_csv(in);
  if (rows.empty() || rows[0].size() != 12) throw ParseError("missing CSV header", 1);
  auto number = [](const std::string& f, std::size_t line) {
    double x = 0.0;
    const auto r = std::from_chars(f.data(), f.data() + f.size(), x);
    if (r.ec != std::errc{} || r.ptr != f.data() + f.size()) throw ParseError("bad number '" + f + "'", line);
    return x;
  };
  auto integer = [](const std::string& f, std::size_t line) {
    std::int64_t x = 0;
    const auto r = std::from_chars(f.data(), f.data() + f.size(), x);
    if (r.ec != std::errc{} || r.ptr != f.data() + f.size()) throw ParseError("bad integer '" + f + "'", line);
    return x;
  };
  std::vector<QueryRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != 12) throw ParseError("expected 12 fields", i + 1);
    QueryRecord r;
    r.dataset = f[0];
    r.algo = f[1];
    r.s = integer(f[2], i + 1);
    r.t = integer(f[3], i + 1);
    if (!f[4].empty()) r.estimate = number(f[4], i + 1);
    if (!f[5].empty()) r.exact = number(f[5], i + 1);
    if (!f[6].empty()) r.rel_error = number(f[6], i + 1);
    r.deg_q = static_cast<std::uint64_t>(integer(f[7], i + 1));
    r.nbr_q = static_cast<std::uint64_t>(integer(f[8], i + 1));
    r.samp_q = static_cast<std::uint64_t>(integer(f[9], i + 1));
    r.wall_ns = integer(f[10], i + 1);
    r.success = f[11] == "true";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace effres::bench
