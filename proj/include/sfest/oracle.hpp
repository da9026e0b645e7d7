#pragma once

#include <concepts>
#include <cstdint>
#include <utility>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/graph.hpp"
#include "sfest/metric.hpp"

namespace sfest {

/// Pay-per-lookup access to an unweighted graph on local ids {0,...,size-1}.
/// Every edge probe costs exactly one query on the oracle's counter.
template <class O>
concept AdjacencyOracle = requires(O& o, const O& co, int u, int v) {
  { co.size() } -> std::convertible_to<int>;
  { o.edge(u, v) } -> std::same_as<bool>;
  { co.queries() } -> std::convertible_to<std::uint64_t>;
};

/// Metric lookups behind a monotone query counter. The scale multiplier is
/// applied to every returned distance and never affects counting. The scale
/// is kept as a numerator/denominator pair so that rescaling by 2/d maps a
/// distance of exactly d to exactly 2 (one IEEE division, no double
/// rounding) - the preprocessing invariant that keeps matched pairs off the
/// level-0 ball graph.
class CountingDistanceOracle {
 public:
  explicit CountingDistanceOracle(const MetricInstance& inst, double scale = 1.0)
      : inst_(&inst) {
    set_scale(scale);
  }

  double distance(int u, int v) {
    ++counter_;
    double w = inst_->weight(u, v);  // weight() validates ids
    if (num_ == 1.0 && den_ == 1.0) return w;
    return w * num_ / den_;
  }

  std::uint64_t queries() const { return counter_; }
  double scale() const { return num_ / den_; }
  void set_scale(double s) { set_scale(s, 1.0); }
  void set_scale(double num, double den) {
    if (num <= 0 || den <= 0) throw InputError("scale must be positive");
    num_ = num;
    den_ = den;
  }
  const MetricInstance& instance() const { return *inst_; }

 private:
  const MetricInstance* inst_;
  std::uint64_t counter_ = 0;
  double num_ = 1.0;
  double den_ = 1.0;
};

/// Adjacency oracle backed by an explicit edge set.
class EdgeSetOracle {
 public:
  explicit EdgeSetOracle(const Graph& g) : g_(&g) {}

  int size() const { return g_->n(); }

  bool edge(int u, int v) {
    if (u == v) throw InputError("adjacency query with u == v");
    ++counter_;
    return g_->has_edge(u, v);
  }

  std::uint64_t queries() const { return counter_; }
  const Graph& graph() const { return *g_; }

 private:
  const Graph* g_;
  std::uint64_t counter_ = 0;
};

/// Adjacency oracle derived from a distance oracle: vertices are the given
/// terminal ids (addressed by local index) and (a,b) is an edge iff
/// w(a,b) < threshold. Each probe is one underlying distance query, so the
/// counter delegates to the distance oracle.
class BallGraphOracle {
 public:
  BallGraphOracle(CountingDistanceOracle& dist, std::vector<int> vertices, double tau)
      : dist_(&dist), vertices_(std::move(vertices)), threshold_(2.0 * tau) {}

  int size() const { return static_cast<int>(vertices_.size()); }

  bool edge(int a, int b) {
    if (a == b) throw InputError("adjacency query with u == v");
    if (a < 0 || a >= size() || b < 0 || b >= size())
      throw InputError("ball graph index out of range");
    return dist_->distance(vertices_[a], vertices_[b]) < threshold_;
  }

  std::uint64_t queries() const { return dist_->queries(); }
  const std::vector<int>& vertices() const { return vertices_; }
  double edge_threshold() const { return threshold_; }

 private:
  CountingDistanceOracle* dist_;
  std::vector<int> vertices_;
  double threshold_;
};

static_assert(AdjacencyOracle<EdgeSetOracle>);
static_assert(AdjacencyOracle<BallGraphOracle>);

}  // namespace sfest
