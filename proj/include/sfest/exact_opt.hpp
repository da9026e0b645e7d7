#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/metric.hpp"

namespace sfest {

/// Minimum Steiner-tree weight for the given terminals over all n vertices,
/// by Dreyfus-Wagner subset DP on the metric closure. For a metric the
/// closure is the distance matrix itself, and one min-plus pass makes each
/// DP layer shortest-path consistent.
inline double steiner_tree_weight(const MetricInstance& inst, const std::vector<int>& terminals) {
  const int n = inst.n();
  const int t = static_cast<int>(terminals.size());
  if (t == 0) return 0.0;
  if (t == 1) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  const int full = (1 << t) - 1;
  std::vector<std::vector<double>> dp(full + 1, std::vector<double>(n, inf));
  for (int i = 0; i < t; ++i)
    for (int v = 0; v < n; ++v) dp[1 << i][v] = inst.weight(terminals[i], v);
  for (int mask = 1; mask <= full; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;  // singletons initialized above
    auto& layer = dp[mask];
    for (int v = 0; v < n; ++v) {
      double best = inf;
      for (int sub = (mask - 1) & mask; sub > (mask ^ sub); sub = (sub - 1) & mask)
        best = std::min(best, dp[sub][v] + dp[mask ^ sub][v]);
      layer[v] = best;
    }
    for (int v = 0; v < n; ++v) {
      double best = layer[v];
      for (int u = 0; u < n; ++u) best = std::min(best, layer[u] + inst.weight(u, v));
      layer[v] = best;
    }
  }
  double best = inf;
  for (int v = 0; v < n; ++v) best = std::min(best, dp[full][v]);
  return best;
}

namespace detail {

inline void enumerate_partitions(int k, std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<std::vector<int>> blocks;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      out.push_back(blocks);
      return;
    }
    for (std::size_t b = 0; b <= blocks.size(); ++b) {
      if (b == blocks.size()) blocks.emplace_back();
      blocks[b].push_back(i);
      self(self, i + 1);
      blocks[b].pop_back();
      if (blocks[b].empty()) blocks.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

constexpr int kExactOptMaxPairs = 5;
constexpr int kExactOptMaxVertices = 14;

/// Exact Steiner-Forest optimum for the given pairs: minimum over all
/// partitions of the pair set of the per-block Steiner-tree weights. Blocks
/// of an optimal forest are exactly such a partition, and merging any two
/// overlapping block trees only appears in a coarser partition, so the
/// minimum over partitions equals OPT.
inline double exact_opt_sf(const MetricInstance& inst, const std::vector<TerminalPair>& pairs) {
  const int k = static_cast<int>(pairs.size());
  if (k == 0) return 0.0;
  if (k > kExactOptMaxPairs || inst.n() > kExactOptMaxVertices)
    throw InputError("exact_opt_sf is exponential and refuses instances beyond k <= " +
                     std::to_string(kExactOptMaxPairs) + ", n <= " +
                     std::to_string(kExactOptMaxVertices));
  std::vector<std::vector<std::vector<int>>> partitions;
  detail::enumerate_partitions(k, partitions);

  // cache Steiner-tree weights per pair-index subset
  std::vector<double> block_weight(1 << k, -1.0);
  auto weight_of_block = [&](const std::vector<int>& block) {
    int mask = 0;
    for (int i : block) mask |= 1 << i;
    if (block_weight[mask] >= 0) return block_weight[mask];
    std::vector<int> terms;
    for (int i : block) {
      terms.push_back(pairs[i].s);
      terms.push_back(pairs[i].t);
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return block_weight[mask] = steiner_tree_weight(inst, terms);
  };

  double best = std::numeric_limits<double>::infinity();
  for (const auto& partition : partitions) {
    double total = 0;
    for (const auto& block : partition) total += weight_of_block(block);
    best = std::min(best, total);
  }
  return best;
}

inline double exact_opt_sf(const MetricInstance& inst) { return exact_opt_sf(inst, inst.pairs()); }

}  // namespace sfest
