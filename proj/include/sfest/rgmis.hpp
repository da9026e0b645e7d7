#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/graph.hpp"
#include "sfest/oracle.hpp"
#include "sfest/permutation.hpp"

namespace sfest {

/// Call accounting for one vertex-oracle query: recursive_calls includes the
/// root; matrix_queries counts adjacency probes; max_depth is the deepest
/// call-stack level reached.
struct OracleCallStats {
  std::uint64_t recursive_calls = 0;
  std::uint64_t matrix_queries = 0;
  std::uint64_t max_depth = 0;
};

/// The greedy MIS for permutation order: scan vertices in rank order, add a
/// vertex unless a neighbor was already added. Full-access reference path.
inline std::vector<int> rgmis_exact(const Graph& g, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != g.n())
    throw InputError("rgmis_exact: permutation must cover all vertices");
  std::vector<char> blocked(g.n(), 0);
  std::vector<int> mis;
  for (int v : order) {
    if (blocked[v]) continue;
    mis.push_back(v);
    blocked[v] = 1;
    for (int u : g.neighbors(v)) blocked[u] = 1;
  }
  return mis;
}

inline std::vector<int> rgmis_exact(const Graph& g, const Permutation& pi) {
  return rgmis_exact(g, pi.order());
}

/// Memo table for resolved oracle answers; valid for one fixed permutation.
struct MisOracleCache {
  // 0 = unknown, 1 = in the MIS, 2 = not in the MIS
  std::vector<std::uint8_t> state;

  explicit MisOracleCache(int n) : state(n, 0) {}
  void reset() { std::fill(state.begin(), state.end(), 0); }
};

struct MisOracleConfig {
  bool cache = false;  // cross-query memoization of oracle answers
};

/// Resumable evaluation of the matrix-model vertex oracle: is v in
/// RGMIS(pi)? Scans ranks below v in order, probing adjacency and recursing
/// on lower-rank neighbors. Recursion lives on an explicit frame stack, so
/// worst-case depth n is safe and evaluation can be suspended between
/// adjacency probes (used for query-budget interleaving).
template <AdjacencyOracle O>
class MisOracleWalk {
 public:
  MisOracleWalk(O& adj, const Permutation& pi, int v, MisOracleCache* cache = nullptr)
      : adj_(&adj), pi_(&pi), cache_(cache) {
    if (!pi.contains(v)) throw InputError("oracle query for vertex outside permutation");
    call(v);
  }

  bool finished() const { return finished_; }
  bool result() const { return result_; }
  const OracleCallStats& stats() const { return stats_; }

  /// Performs at most one adjacency probe; returns finished().
  bool step() {
    while (!finished_) {
      Frame& f = stack_.back();
      int limit = pi_->rank(f.vertex);
      if (f.next >= limit) {
        resolve(true);
        continue;
      }
      int u = pi_->at(f.next);
      ++f.next;
      ++stats_.matrix_queries;
      if (adj_->edge(u, f.vertex)) call(u);
      return finished_;
    }
    return true;
  }

  void run() {
    while (!step()) {
    }
  }

 private:
  struct Frame {
    int vertex;
    int next;  // next scan index into pi order
  };

  void call(int v) {
    ++stats_.recursive_calls;
    stack_.push_back({v, 0});
    stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, stack_.size());
    if (cache_ && cache_->state[v] != 0) resolve(cache_->state[v] == 1);
  }

  void resolve(bool value) {
    for (;;) {
      Frame f = stack_.back();
      stack_.pop_back();
      if (cache_) cache_->state[f.vertex] = value ? 1 : 2;
      if (stack_.empty()) {
        result_ = value;
        finished_ = true;
        return;
      }
      if (value) {
        value = false;  // a lower-rank neighbor is in the MIS: caller is not
        continue;
      }
      return;  // caller keeps scanning
    }
  }

  O* adj_;
  const Permutation* pi_;
  MisOracleCache* cache_;
  std::vector<Frame> stack_;
  OracleCallStats stats_;
  bool finished_ = false;
  bool result_ = false;
};

/// One-shot form of the matrix-model vertex oracle.
template <AdjacencyOracle O>
std::pair<bool, OracleCallStats> mis_vertex_oracle(O& adj, const Permutation& pi, int v,
                                                   MisOracleCache* cache = nullptr) {
  MisOracleWalk<O> walk(adj, pi, v, cache);
  walk.run();
  return {walk.result(), walk.stats()};
}

/// Neighbor-list reference oracle: identical recursion tree (lower-rank
/// neighbors in increasing rank order), but neighbors come from full
/// adjacency lists and the lookups are not charged as matrix queries.
/// Validation-only path.
inline std::pair<bool, OracleCallStats> abstract_oracle_reference(const Graph& g,
                                                                  const Permutation& pi, int v) {
  if (!pi.contains(v)) throw InputError("oracle query for vertex outside permutation");
  struct Frame {
    int vertex;
    std::vector<int> lower;  // lower-rank neighbors, increasing rank
    std::size_t next;
  };
  OracleCallStats stats;
  std::vector<Frame> stack;
  auto call = [&](int u) {
    ++stats.recursive_calls;
    std::vector<int> lower;
    for (int w : g.neighbors(u))
      if (pi.contains(w) && pi.rank(w) < pi.rank(u)) lower.push_back(w);
    std::sort(lower.begin(), lower.end(),
              [&](int a, int b) { return pi.rank(a) < pi.rank(b); });
    stack.push_back({u, std::move(lower), 0});
    stats.max_depth = std::max<std::uint64_t>(stats.max_depth, stack.size());
  };

  call(v);
  for (;;) {
    Frame& f = stack.back();
    if (f.next < f.lower.size()) {
      call(f.lower[f.next++]);
      continue;
    }
    // frame resolves true; a true child makes its caller false, which lets
    // the caller's caller keep scanning
    bool value = true;
    for (;;) {
      stack.pop_back();
      if (stack.empty()) return {value, stats};
      if (value) {
        value = false;
        continue;
      }
      break;
    }
  }
}

}  // namespace sfest
