#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/graph.hpp"
#include "sfest/metric.hpp"
#include "sfest/permutation.hpp"

namespace sfest {

/// Line instance with n = 2^L - 1 vertices spaced 2 apart and the pairs
/// (v_i, v_{i + floor(n/2)}), so every demand spans half the line.
inline MetricInstance gen_i1(int levels) {
  if (levels < 2) throw InputError("gen_i1 requires L >= 2");
  const int n = (1 << levels) - 1;
  std::vector<double> pos(n);
  for (int i = 0; i < n; ++i) pos[i] = 2.0 * i;
  std::vector<TerminalPair> pairs;
  const int half = n / 2;
  for (int i = 0; i < half; ++i) pairs.push_back({i, i + half});
  return MetricInstance::from_line(std::move(pos), std::move(pairs));
}

/// Line instance of L clusters: cluster i holds floor(n / 2^i) vertices
/// spaced 2^{i+1} apart with consecutive vertices paired; clusters sit at
/// least `gap` apart. Chained pairs share interior vertices, which the
/// loader will split into distance-0 copies.
inline MetricInstance gen_i2(int levels, double gap) {
  if (levels < 2) throw InputError("gen_i2 requires L >= 2");
  const int n = (1 << levels) - 1;
  if (!(gap > n)) throw InputError("gen_i2 requires gap > n = 2^L - 1");
  std::vector<double> pos;
  std::vector<TerminalPair> pairs;
  double offset = 0;
  for (int i = 1; i <= levels; ++i) {
    int size = n >> i;
    if (size == 0) continue;
    double spacing = std::ldexp(1.0, i + 1);
    int base = static_cast<int>(pos.size());
    for (int j = 0; j < size; ++j) pos.push_back(offset + j * spacing);
    for (int j = 0; j + 1 < size; ++j) pairs.push_back({base + j, base + j + 1});
    offset = pos.back() + gap;
  }
  return MetricInstance::from_line(std::move(pos), std::move(pairs));
}

/// n uniform points in [0,1]^dim with k disjoint random terminal pairs.
inline MetricInstance gen_random_euclid(int n, int k, int dim, std::uint64_t seed) {
  if (dim < 1) throw InputError("gen_random_euclid requires dim >= 1");
  if (n < 1 || k < 0) throw InputError("gen_random_euclid requires n >= 1, k >= 0");
  if (2 * k > n) throw InputError("gen_random_euclid requires 2k <= n");
  Rng rng(seed);
  std::vector<double> coords(static_cast<std::size_t>(n) * dim);
  for (auto& c : coords) c = rng.next_double();
  Permutation shuffle = random_permutation(n, rng);
  std::vector<TerminalPair> pairs;
  for (int i = 0; i < k; ++i) pairs.push_back({shuffle.at(2 * i), shuffle.at(2 * i + 1)});
  return MetricInstance::from_points(dim, std::move(coords), std::move(pairs));
}

/// G(n, p): each unordered pair is an edge independently with probability p.
inline Graph gen_gnp(int n, double p, std::uint64_t seed) {
  if (n < 0) throw InputError("gen_gnp requires n >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("gen_gnp requires p in [0,1]");
  Graph g(n);
  if (p == 0.0) return g;
  Rng rng(seed);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (p == 1.0 || rng.next_double() < p) g.add_edge(u, v);
  return g;
}

/// OPT for a line instance: the optimal forest is the union of the pair
/// intervals, and its cost is the total length of that union.
inline double analytic_line_opt(const MetricInstance& inst) {
  if (inst.kind() != MetricInstance::Kind::line)
    throw InputError("analytic_line_opt requires a line instance");
  std::vector<std::pair<double, double>> intervals;
  for (const auto& p : inst.pairs()) {
    double a = inst.coords()[p.s];
    double b = inst.coords()[p.t];
    if (a > b) std::swap(a, b);
    if (a < b) intervals.emplace_back(a, b);
  }
  std::sort(intervals.begin(), intervals.end());
  double total = 0, cur_lo = 0, cur_hi = 0;
  bool open = false;
  for (const auto& [lo, hi] : intervals) {
    if (!open || lo > cur_hi) {
      if (open) total += cur_hi - cur_lo;
      cur_lo = lo;
      cur_hi = hi;
      open = true;
    } else {
      cur_hi = std::max(cur_hi, hi);
    }
  }
  if (open) total += cur_hi - cur_lo;
  return total;
}

}  // namespace sfest
