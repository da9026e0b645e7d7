#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/certify.hpp"
#include "sfest/exact_opt.hpp"
#include "sfest/generators.hpp"
#include "sfest/mis_estimate.hpp"
#include "sfest/steiner.hpp"

namespace sfest {

/// One benchmark trial. wall_time_ms is recorded but never part of
/// determinism checks or acceptance thresholds; query counts are the
/// model-faithful metric.
struct BenchRow {
  int n = 0;
  double k_or_p = 0;
  double epsilon = 0;
  std::uint64_t seed = 0;
  double estimate = 0;
  std::optional<double> exact_reference;
  std::uint64_t queries = 0;
  double wall_time_ms = 0;
};

struct SfBenchRow {
  std::string instance;
  int n = 0;
  int k = 0;
  double epsilon = 0;
  std::uint64_t seed = 0;
  double sol_scaled = 0;
  double sol_original = 0;
  double exact_mis_sum = 0;  // derandomized reference, working units
  std::optional<double> opt_original;
  std::uint64_t queries = 0;
  double wall_time_ms = 0;
  std::vector<LevelReport> levels;  // per-level breakdown of the run
};

namespace detail {

template <class Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  for (auto& t : pool) t.join();
}

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

struct MisBenchParams {
  std::vector<int> sizes;
  double p = 0.5;
  double epsilon = 0.2;
  int trials = 1;
  std::uint64_t seed = 0;
  int exact_max = 2000;  // record the exact RGMIS size up to this n
  int workers = 1;
  MisOracleConfig oracle = {};
};

/// Per (n, trial): draw G(n, p), run the estimator, record the query count,
/// and for small n recompute the exact RGMIS size from the stored
/// permutation. Rows come back in spec order regardless of worker count.
inline std::vector<BenchRow> run_mis_bench(const MisBenchParams& params) {
  if (params.sizes.empty()) throw InputError("run_mis_bench requires at least one size");
  if (params.trials < 1) throw InputError("run_mis_bench requires trials >= 1");
  const int count = static_cast<int>(params.sizes.size()) * params.trials;
  std::vector<BenchRow> rows(count);
  detail::parallel_for(count, params.workers, [&](int idx) {
    const int n = params.sizes[idx / params.trials];
    const int trial = idx % params.trials;
    const std::uint64_t graph_seed = mix_seed(mix_seed(params.seed, n), trial);
    const std::uint64_t est_seed = mix_seed(graph_seed, 0xe57);
    detail::WallTimer timer;
    Graph g = gen_gnp(n, params.p, graph_seed);
    EdgeSetOracle oracle(g);
    MisEstimate est = alg_mul(oracle, params.epsilon, est_seed, params.oracle);
    BenchRow row;
    row.n = n;
    row.k_or_p = params.p;
    row.epsilon = params.epsilon;
    row.seed = est_seed;
    row.estimate = est.value;
    row.queries = est.queries;
    if (n <= params.exact_max)
      row.exact_reference = static_cast<double>(rgmis_exact(g, est.permutation).size());
    row.wall_time_ms = timer.ms();
    rows[idx] = std::move(row);
  });
  return rows;
}

struct SfBenchParams {
  double epsilon = 0.01;
  int trials = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  MisOracleConfig oracle = {};
};

struct NamedInstance {
  std::string name;
  MetricInstance instance;
};

/// Per (instance, trial): run the cost estimator and pair it with the
/// derandomized reference sum (exact per-level MIS under a seeded global
/// permutation) plus an exact or analytic OPT when one is in reach.
inline std::vector<SfBenchRow> run_sf_bench(const std::vector<NamedInstance>& instances,
                                            const SfBenchParams& params) {
  const int count = static_cast<int>(instances.size()) * params.trials;
  std::vector<SfBenchRow> rows(count);
  detail::parallel_for(count, params.workers, [&](int idx) {
    const auto& named = instances[idx / params.trials];
    const int trial = idx % params.trials;
    const std::uint64_t run_seed = mix_seed(mix_seed(params.seed, idx / params.trials), trial);
    detail::WallTimer timer;
    SfParams sp;
    sp.epsilon = params.epsilon;
    sp.seed = run_seed;
    sp.oracle = params.oracle;
    SfEstimateReport rep = estimate_sf(named.instance, sp);

    SfBenchRow row;
    row.instance = named.name;
    row.n = named.instance.n();
    row.k = named.instance.k();
    row.epsilon = params.epsilon;
    row.seed = run_seed;
    row.sol_scaled = rep.sol_scaled;
    row.sol_original = rep.sol_original;
    row.queries = rep.total_queries;

    if (rep.k_eff > 0) {
      CountingDistanceOracle probe(named.instance);
      PreprocessedInstance pre = preprocess(probe, named.instance.pairs());
      MetricView scaled = scaled_view(named.instance, pre);
      Permutation pi = random_permutation(named.instance.n(), mix_seed(run_seed, 0x9ef));
      row.exact_mis_sum = exact_level_mis_sum(scaled, pre.kept, levels(pre.k_eff), pi);
    }
    if (named.instance.kind() == MetricInstance::Kind::line)
      row.opt_original = analytic_line_opt(named.instance);
    else if (named.instance.k() <= kExactOptMaxPairs && named.instance.n() <= kExactOptMaxVertices)
      row.opt_original = exact_opt_sf(named.instance);
    row.levels = rep.levels;
    row.wall_time_ms = timer.ms();
    rows[idx] = std::move(row);
  });
  return rows;
}

inline double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw InputError("least_squares_slope requires >= 2 matching points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  if (den == 0) throw InputError("least_squares_slope: degenerate x values");
  return num / den;
}

/// Least-squares slope of log(queries) against log(n); needs >= 3 distinct
/// sizes to be meaningful.
inline double fit_scaling_exponent(const std::vector<std::pair<double, double>>& points) {
  std::vector<double> seen;
  for (const auto& [n, q] : points) {
    if (n <= 0 || q <= 0) throw InputError("fit_scaling_exponent requires positive values");
    bool dup = false;
    for (double s : seen) dup = dup || s == n;
    if (!dup) seen.push_back(n);
  }
  if (seen.size() < 3) throw InputError("fit_scaling_exponent requires >= 3 distinct sizes");
  std::vector<double> xs, ys;
  for (const auto& [n, q] : points) {
    xs.push_back(std::log(n));
    ys.push_back(std::log(q));
  }
  return least_squares_slope(xs, ys);
}

/// Groups bench rows by n and fits the exponent on mean queries.
inline double fit_scaling_exponent(const std::vector<BenchRow>& rows) {
  std::vector<std::pair<double, double>> agg;  // (n, sum) then averaged
  std::vector<int> counts;
  for (const auto& row : rows) {
    bool found = false;
    for (std::size_t i = 0; i < agg.size(); ++i)
      if (agg[i].first == row.n) {
        agg[i].second += static_cast<double>(row.queries);
        ++counts[i];
        found = true;
      }
    if (!found) {
      agg.emplace_back(row.n, static_cast<double>(row.queries));
      counts.push_back(1);
    }
  }
  for (std::size_t i = 0; i < agg.size(); ++i) agg[i].second /= counts[i];
  return fit_scaling_exponent(agg);
}

// --- CSV emission (canonical report format; stable column order) ---

inline std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "n,k_or_p,epsilon,seed,estimate,exact_reference,queries,wall_time_ms\n";
  for (const auto& r : rows) {
    out << r.n << ',' << detail::fmt_double(r.k_or_p) << ',' << detail::fmt_double(r.epsilon)
        << ',' << r.seed << ',' << detail::fmt_double(r.estimate) << ',';
    if (r.exact_reference) out << detail::fmt_double(*r.exact_reference);
    out << ',' << r.queries << ',' << detail::fmt_double(r.wall_time_ms) << '\n';
  }
  return out.str();
}

inline std::string to_csv(const std::vector<SfBenchRow>& rows) {
  std::ostringstream out;
  out << "instance,n,k,epsilon,seed,sol_scaled,sol_original,exact_mis_sum,opt_original,queries,"
         "wall_time_ms\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.n << ',' << r.k << ',' << detail::fmt_double(r.epsilon) << ','
        << r.seed << ',' << detail::fmt_double(r.sol_scaled) << ','
        << detail::fmt_double(r.sol_original) << ',' << detail::fmt_double(r.exact_mis_sum) << ',';
    if (r.opt_original) out << detail::fmt_double(*r.opt_original);
    out << ',' << r.queries << ',' << detail::fmt_double(r.wall_time_ms) << '\n';
  }
  return out.str();
}

/// Companion table for sf bench rows: one line per (run, level).
inline std::string to_levels_csv(const std::vector<SfBenchRow>& rows) {
  std::ostringstream out;
  out << "instance,seed,level,tau,active_count,mis_estimate,queries,exact_prefix\n";
  for (const auto& r : rows)
    for (const auto& lv : r.levels)
      out << r.instance << ',' << r.seed << ',' << lv.level << ',' << detail::fmt_double(lv.tau)
          << ',' << lv.active_count << ',' << detail::fmt_double(lv.mis_estimate) << ','
          << lv.queries << ',' << lv.exact_prefix << '\n';
  return out.str();
}

inline std::string to_csv(const SfEstimateReport& rep) {
  std::ostringstream out;
  out << "level,tau,active_count,mis_estimate,queries,exact_prefix\n";
  for (const auto& lv : rep.levels)
    out << lv.level << ',' << detail::fmt_double(lv.tau) << ',' << lv.active_count << ','
        << detail::fmt_double(lv.mis_estimate) << ',' << lv.queries << ',' << lv.exact_prefix
        << '\n';
  return out.str();
}

}  // namespace sfest
