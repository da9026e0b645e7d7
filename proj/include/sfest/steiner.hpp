#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/metric.hpp"
#include "sfest/mis_estimate.hpp"
#include "sfest/oracle.hpp"

namespace sfest {

/// Terminal -> partner lookup. Requires disjoint pairs (guaranteed after
/// ensure_disjoint_pairs), making match_of an involution.
class MatchMap {
 public:
  MatchMap(const std::vector<TerminalPair>& pairs, int n) : match_(n, -1) {
    for (const auto& p : pairs) {
      if (p.s < 0 || p.s >= n || p.t < 0 || p.t >= n)
        throw InputError("terminal id out of range");
      if (match_[p.s] != -1 || match_[p.t] != -1 || p.s == p.t)
        throw InputError("terminal pairs are not disjoint");
      match_[p.s] = p.t;
      match_[p.t] = p.s;
    }
  }

  bool is_terminal(int v) const { return v >= 0 && v < static_cast<int>(match_.size()) && match_[v] != -1; }

  int match_of(int t) const {
    if (!is_terminal(t)) throw InputError("match_of: vertex is not a terminal");
    return match_[t];
  }

 private:
  std::vector<int> match_;
};

struct IgnoredPair {
  TerminalPair pair;
  double distance;  // original units
};

struct PreprocessedInstance {
  std::vector<TerminalPair> kept;
  std::vector<double> kept_distances;  // original units, from the same k queries
  std::vector<IgnoredPair> ignored;
  double x_max = 0;     // max pair distance, original units
  double min_kept = 1;  // min kept pair distance, original units
  double scale = 1;     // 2 / min_kept: multiplier into working units
  int k_eff = 0;
  bool degenerate = false;  // every pair at distance 0
};

/// Reads each pair distance once (exactly k queries), drops the pairs below
/// the X/k cutoff, and fixes the scale so the closest kept pair sits at
/// working distance 2. A pair exactly at the cutoff is kept; dropping it is
/// only needed for pairs strictly closer (and keeps the k = 1 case sane).
inline PreprocessedInstance preprocess(CountingDistanceOracle& oracle,
                                       const std::vector<TerminalPair>& pairs) {
  if (pairs.empty()) throw InputError("preprocess requires at least one terminal pair");
  PreprocessedInstance pre;
  const int k = static_cast<int>(pairs.size());
  std::vector<double> dist(k);
  for (int i = 0; i < k; ++i) {
    dist[i] = oracle.distance(pairs[i].s, pairs[i].t);
    pre.x_max = std::max(pre.x_max, dist[i]);
  }
  if (pre.x_max == 0.0) {
    pre.degenerate = true;
    for (int i = 0; i < k; ++i) pre.ignored.push_back({pairs[i], 0.0});
    return pre;
  }
  double cutoff = pre.x_max / k;
  double min_kept = pre.x_max;
  for (int i = 0; i < k; ++i) {
    if (dist[i] < cutoff) {
      pre.ignored.push_back({pairs[i], dist[i]});
    } else {
      pre.kept.push_back(pairs[i]);
      pre.kept_distances.push_back(dist[i]);
      min_kept = std::min(min_kept, dist[i]);
    }
  }
  pre.k_eff = static_cast<int>(pre.kept.size());
  pre.min_kept = min_kept;
  pre.scale = 2.0 / min_kept;
  return pre;
}

/// Doubling thresholds tau_i = 2^i for i = 0..L, L = ceil(log2(2 k^2)).
inline std::vector<double> levels(int k_eff) {
  if (k_eff < 1) throw InputError("levels requires k_eff >= 1");
  double need = 2.0 * static_cast<double>(k_eff) * k_eff;
  int top = 0;
  while (std::ldexp(1.0, top) < need) ++top;
  std::vector<double> taus(top + 1);
  for (int i = 0; i <= top; ++i) taus[i] = std::ldexp(1.0, i);
  return taus;
}

/// Terminals still separated from their match at threshold tau, in working
/// units; one distance query per terminal.
inline std::vector<int> active_terminals(CountingDistanceOracle& oracle, const MatchMap& match,
                                         const std::vector<TerminalPair>& kept, double tau) {
  std::vector<int> active;
  for (const auto& p : kept) {
    if (oracle.distance(p.s, match.match_of(p.s)) >= tau) active.push_back(p.s);
    if (oracle.distance(p.t, match.match_of(p.t)) >= tau) active.push_back(p.t);
  }
  std::sort(active.begin(), active.end());
  return active;
}

/// Materializes the level's active set (2 k_eff queries) and returns the
/// lazily probed ball-collision oracle: edge iff w(u,v) < 2 tau.
inline BallGraphOracle ball_graph_oracle(CountingDistanceOracle& dist, const MatchMap& match,
                                         const std::vector<TerminalPair>& kept, double tau) {
  return BallGraphOracle(dist, active_terminals(dist, match, kept, tau), tau);
}

struct LevelReport {
  int level = 0;
  double tau = 0;
  int active_count = 0;
  double mis_estimate = 0;
  std::uint64_t queries = 0;  // oracle lookups spent on this level
  int exact_prefix = 0;       // vertices placed by the estimator's greedy stage
  // in-memory extras for verification; not part of the serialized row
  std::vector<int> active;            // terminal ids, ascending
  std::vector<int> mis_permutation;   // estimator's permutation as terminal ids
};

struct SfEstimateReport {
  double sol_scaled = 0;    // sum of M_i tau_i estimates, working units
  double sol_original = 0;  // back in input units, plus ignored-pair stitching
  double scale = 1;
  double min_kept = 1;      // working units are (2 w / min_kept)
  double x_max = 0;
  int k_eff = 0;
  std::vector<LevelReport> levels;
  std::vector<IgnoredPair> ignored;
  std::uint64_t preprocessing_queries = 0;
  std::uint64_t total_queries = 0;
  std::uint64_t seed = 0;
  double epsilon = 0;
};

struct SfParams {
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  MisOracleConfig oracle = {};
};

/// The cost estimator: preprocess, then for each threshold level estimate
/// the ball-graph MIS size and sum the products. Ignored pairs are stitched
/// back at their exact distance (already paid for during preprocessing).
inline SfEstimateReport estimate_sf(const MetricInstance& inst, const SfParams& params) {
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
    throw InputError("epsilon must be in (0,1)");
  if (inst.k() < 1) throw InputError("estimate_sf requires at least one terminal pair");

  SfEstimateReport report;
  report.seed = params.seed;
  report.epsilon = params.epsilon;

  CountingDistanceOracle oracle(inst);
  PreprocessedInstance pre = preprocess(oracle, inst.pairs());
  report.preprocessing_queries = oracle.queries();
  report.scale = pre.scale;
  report.min_kept = pre.min_kept;
  report.x_max = pre.x_max;
  report.k_eff = pre.k_eff;
  report.ignored = pre.ignored;

  double ignored_cost = 0;
  for (const auto& ig : pre.ignored) ignored_cost += ig.distance;

  if (pre.k_eff == 0) {
    report.sol_scaled = 0;
    report.sol_original = ignored_cost;
    report.total_queries = oracle.queries();
    return report;
  }

  oracle.set_scale(2.0, pre.min_kept);
  MatchMap match(pre.kept, inst.n());
  const double eps_mis = std::min(params.epsilon, 0.01);
  Rng seeder(params.seed);

  std::vector<double> taus = levels(pre.k_eff);
  for (int i = 0; i < static_cast<int>(taus.size()); ++i) {
    std::uint64_t level_seed = seeder.next_u64();
    std::uint64_t before = oracle.queries();
    BallGraphOracle ball = ball_graph_oracle(oracle, match, pre.kept, taus[i]);
    LevelReport row;
    row.level = i;
    row.tau = taus[i];
    row.active_count = ball.size();
    row.active = ball.vertices();
    if (ball.size() > 0) {
      // activity is pairwise, so a nonempty level has >= 2 terminals
      MisEstimate est = alg_mul(ball, eps_mis, level_seed, params.oracle);
      row.mis_estimate = est.value;
      row.exact_prefix = static_cast<int>(est.exact_prefix.size());
      row.mis_permutation.reserve(est.permutation.size());
      for (int local : est.permutation.order())
        row.mis_permutation.push_back(row.active[local]);
    }
    row.queries = oracle.queries() - before;
    report.sol_scaled += row.mis_estimate * row.tau;
    report.levels.push_back(std::move(row));
  }

  report.sol_original = report.sol_scaled * pre.min_kept / 2.0 + ignored_cost;
  report.total_queries = oracle.queries();
  return report;
}

}  // namespace sfest
