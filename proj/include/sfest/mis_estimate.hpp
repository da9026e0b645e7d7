#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/oracle.hpp"
#include "sfest/permutation.hpp"
#include "sfest/rgmis.hpp"

namespace sfest {

/// Result of an MIS-size estimation run.
struct MisEstimate {
  double value = 0;                // the size estimate
  std::vector<int> exact_prefix;   // vertices explicitly placed by the greedy loop
  Permutation permutation;         // the full permutation the estimate refers to
  std::uint64_t queries = 0;       // matrix queries consumed by this run
  double epsilon = 0;
  std::uint64_t seed = 0;
};

inline int sample_count(int s, int n, double epsilon) {
  return static_cast<int>(std::ceil(27.0 * s * std::log(static_cast<double>(n)) /
                                    (epsilon * epsilon)));
}

inline double additive_estimate_value(double x_sum, int r, int n, int s, double epsilon) {
  return (1.0 + epsilon / 2.0) * (x_sum / r * n + epsilon * n / (3.0 * s));
}

/// Resumable sampling estimator: draws r = ceil(27 s ln(n) / eps^2) vertices
/// with replacement, evaluates the vertex oracle on each, and returns
/// (1 + eps/2) (sum X_i / r * n + eps n / (3s)). With high probability the
/// value is a (1+eps, eps*n/s)-estimate of |RGMIS(pi)|.
template <AdjacencyOracle O>
class AlgAddMulRun {
 public:
  AlgAddMulRun(O& adj, Permutation pi, int s, double epsilon, Rng rng,
               MisOracleConfig cfg = {})
      : adj_(&adj), pi_(std::move(pi)), s_(s), eps_(epsilon), rng_(std::move(rng)), cfg_(cfg) {
    if (s <= 0) throw InputError("alg_add_mul requires s > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must be in (0,1)");
    n_ = pi_.size();
    if (n_ < 2) throw InputError("alg_add_mul requires n >= 2");
    r_ = sample_count(s_, n_, eps_);
    if (cfg_.cache) cache_ = std::make_unique<MisOracleCache>(pi_.universe());
  }

  bool done() const { return done_; }
  double value() const { return value_; }
  int r() const { return r_; }

  /// Runs until the oracle counter reaches `query_limit` or sampling ends.
  bool advance_until(std::uint64_t query_limit) {
    while (!done_) {
      if (walk_) {
        if (adj_->queries() >= query_limit) return false;
        if (walk_->step()) {
          x_sum_ += walk_->result() ? 1.0 : 0.0;
          walk_.reset();
          ++i_;
        }
        continue;
      }
      if (i_ >= r_) {
        value_ = additive_estimate_value(x_sum_, r_, n_, s_, eps_);
        done_ = true;
        break;
      }
      int v = pi_.at(rng_.next_int(n_));
      walk_.emplace(*adj_, pi_, v, cache_.get());
    }
    return done_;
  }

 private:
  O* adj_;
  Permutation pi_;
  int s_;
  double eps_;
  Rng rng_;
  MisOracleConfig cfg_;
  int n_ = 0;
  int r_ = 0;
  int i_ = 0;
  double x_sum_ = 0;
  double value_ = 0;
  bool done_ = false;
  std::optional<MisOracleWalk<O>> walk_;
  std::unique_ptr<MisOracleCache> cache_;
};

template <AdjacencyOracle O>
MisEstimate alg_add_mul(O& adj, const Permutation& pi, int s, double epsilon, Rng& rng,
                        MisOracleConfig cfg = {}) {
  std::uint64_t before = adj.queries();
  AlgAddMulRun<O> run(adj, pi, s, epsilon, Rng(rng.next_u64()), cfg);
  run.advance_until(std::numeric_limits<std::uint64_t>::max());
  MisEstimate est;
  est.value = run.value();
  est.permutation = pi;
  est.queries = adj.queries() - before;
  est.epsilon = epsilon;
  return est;
}

/// Resumable two-stage estimator. Greedy stage: walk the permutation,
/// explicitly adding vertices to the MIS and deactivating their closed
/// neighborhoods (n-1 probes per chosen vertex), for up to s = ceil(sqrt(n))
/// additions. If the permutation is exhausted first, the MIS was built
/// exactly. Otherwise the sampling estimator finishes the job on the
/// still-active suffix. Satisfies |RGMIS(pi)| <= value <= (1+eps)|RGMIS(pi)|
/// with high probability.
template <AdjacencyOracle O>
class AlgMulRun {
 public:
  AlgMulRun(O& adj, double epsilon, std::uint64_t seed, MisOracleConfig cfg = {})
      : adj_(&adj), eps_(epsilon), seed_(seed), cfg_(cfg), rng_(seed) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must be in (0,1)");
    n_ = adj_->size();
    if (n_ < 2) throw InputError("alg_mul requires n >= 2");
    pi_ = random_permutation(n_, rng_);
    s_ = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_))));
    active_.assign(n_, 1);
    queries_at_start_ = adj_->queries();
  }

  bool done() const { return done_; }

  bool advance_until(std::uint64_t query_limit) {
    while (!done_) {
      if (adding_) {
        if (adj_->queries() >= query_limit) return false;
        step_deactivation();
        continue;
      }
      if (sampler_) {
        if (!sampler_->advance_until(query_limit)) return false;
        finish(static_cast<double>(prefix_.size()) + sampler_->value());
        continue;
      }
      // greedy loop head: while j < n and |prefix| < s
      if (static_cast<int>(prefix_.size()) >= s_ || j_ >= n_) {
        start_sampling_or_finish();
        continue;
      }
      int v = pi_.at(j_);
      ++j_;
      if (!active_[v]) continue;
      prefix_.push_back(v);
      chosen_ = v;
      scan_v_ = 0;
      active_[v] = 0;
      adding_ = true;
    }
    return done_;
  }

  const MisEstimate& result() const {
    if (!done_) throw InputError("alg_mul result requested before completion");
    return result_;
  }

  std::uint64_t queries_used() const { return adj_->queries() - queries_at_start_; }

 private:
  void step_deactivation() {
    while (scan_v_ < n_ && scan_v_ == chosen_) ++scan_v_;
    if (scan_v_ >= n_) {
      adding_ = false;
      return;
    }
    if (adj_->edge(chosen_, scan_v_)) active_[scan_v_] = 0;
    ++scan_v_;
    if (scan_v_ == chosen_) ++scan_v_;
    if (scan_v_ >= n_) adding_ = false;
  }

  void start_sampling_or_finish() {
    if (static_cast<int>(prefix_.size()) < s_) {
      // permutation exhausted: the MIS was built explicitly
      finish(static_cast<double>(prefix_.size()));
      return;
    }
    std::vector<int> still_active;
    for (int v = 0; v < n_; ++v)
      if (active_[v]) still_active.push_back(v);
    if (still_active.size() <= 1) {
      // nothing left to estimate: at most one vertex, which joins the MIS
      finish(static_cast<double>(prefix_.size() + still_active.size()));
      return;
    }
    Permutation sub = pi_.restricted_to(still_active);
    sampler_.emplace(*adj_, std::move(sub), s_, eps_, Rng(rng_.next_u64()), cfg_);
  }

  void finish(double value) {
    result_.value = value;
    result_.exact_prefix = prefix_;
    result_.permutation = pi_;
    result_.queries = queries_used();
    result_.epsilon = eps_;
    result_.seed = seed_;
    done_ = true;
  }

  O* adj_;
  double eps_;
  std::uint64_t seed_;
  MisOracleConfig cfg_;
  Rng rng_;
  int n_ = 0;
  int s_ = 0;
  Permutation pi_;
  std::vector<char> active_;
  std::vector<int> prefix_;
  int j_ = 0;
  bool adding_ = false;
  int chosen_ = -1;
  int scan_v_ = 0;
  std::optional<AlgAddMulRun<O>> sampler_;
  MisEstimate result_;
  bool done_ = false;
  std::uint64_t queries_at_start_ = 0;
};

template <AdjacencyOracle O>
MisEstimate alg_mul(O& adj, double epsilon, std::uint64_t seed, MisOracleConfig cfg = {}) {
  AlgMulRun<O> run(adj, epsilon, seed, cfg);
  run.advance_until(std::numeric_limits<std::uint64_t>::max());
  return run.result();
}

inline std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return trial == 0 ? seed : mix_seed(seed, static_cast<std::uint64_t>(trial));
}

inline int default_hp_instances(int n) {
  return std::max(1, static_cast<int>(std::ceil(3.0 * std::log(static_cast<double>(n)))));
}

/// Runs independent estimator trials with interleaved query budgets and
/// returns the first to complete (ties go to the cheapest). This is the
/// sequential, single-threaded realization of parallel restarts: budgets
/// advance in lockstep rounds of `round_step` queries per trial, so the
/// winner is the trial with the smallest standalone query count and the
/// total spend is at most instances * (winner cost + round_step).
template <class Builder>
auto alg_mul_hp(Builder&& make_oracle, double epsilon, std::uint64_t seed, int instances,
                MisOracleConfig cfg = {}, std::uint64_t round_step = 0)
    -> MisEstimate {
  using Oracle = decltype(make_oracle());
  if (instances < 1) throw InputError("alg_mul_hp requires instances >= 1");
  std::vector<std::unique_ptr<Oracle>> oracles;
  std::vector<std::unique_ptr<AlgMulRun<Oracle>>> runs;
  oracles.reserve(instances);
  runs.reserve(instances);
  for (int t = 0; t < instances; ++t) {
    oracles.push_back(std::make_unique<Oracle>(make_oracle()));
    runs.push_back(
        std::make_unique<AlgMulRun<Oracle>>(*oracles.back(), epsilon, trial_seed(seed, t), cfg));
  }
  std::uint64_t step = round_step ? round_step : static_cast<std::uint64_t>(oracles[0]->size());
  for (std::uint64_t budget = step;; budget += step) {
    for (int t = 0; t < instances; ++t) runs[t]->advance_until(budget);
    int best = -1;
    for (int t = 0; t < instances; ++t) {
      if (!runs[t]->done()) continue;
      if (best < 0 || runs[t]->result().queries < runs[best]->result().queries) best = t;
    }
    if (best >= 0) return runs[best]->result();
  }
}

}  // namespace sfest
