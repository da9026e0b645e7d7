#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sfest/common.hpp"

namespace sfest {

struct TerminalPair {
  int s;
  int t;
  bool operator==(const TerminalPair&) const = default;
};

/// A point set with a pay-free distance function plus k terminal pairs.
/// All counted access goes through CountingDistanceOracle; weight() here is
/// the free path used by generators, baselines and verifiers.
class MetricInstance {
 public:
  enum class Kind { matrix, line, euclid };

  static MetricInstance from_matrix(int n, std::vector<double> matrix,
                                    std::vector<TerminalPair> pairs) {
    MetricInstance m;
    m.kind_ = Kind::matrix;
    m.n_ = n;
    m.matrix_ = std::move(matrix);
    if (static_cast<int>(m.matrix_.size()) != n * n)
      throw InputError("matrix size does not match n");
    m.set_pairs(std::move(pairs));
    return m;
  }

  static MetricInstance from_line(std::vector<double> positions,
                                  std::vector<TerminalPair> pairs) {
    MetricInstance m;
    m.kind_ = Kind::line;
    m.n_ = static_cast<int>(positions.size());
    m.coords_ = std::move(positions);
    m.dim_ = 1;
    m.set_pairs(std::move(pairs));
    return m;
  }

  static MetricInstance from_points(int dim, std::vector<double> coords,
                                    std::vector<TerminalPair> pairs) {
    MetricInstance m;
    m.kind_ = Kind::euclid;
    m.dim_ = dim;
    if (dim < 1) throw InputError("euclid dimension must be >= 1");
    if (coords.size() % dim != 0) throw InputError("coordinate list not divisible by dim");
    m.n_ = static_cast<int>(coords.size()) / dim;
    m.coords_ = std::move(coords);
    m.set_pairs(std::move(pairs));
    return m;
  }

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  int dim() const { return dim_; }
  int k() const { return static_cast<int>(pairs_.size()); }
  const std::vector<TerminalPair>& pairs() const { return pairs_; }
  const std::vector<double>& coords() const { return coords_; }

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw InputError("vertex id out of range: " + std::to_string(v));
  }

  double weight(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    switch (kind_) {
      case Kind::matrix:
        return matrix_[static_cast<std::size_t>(u) * n_ + v];
      case Kind::line:
        return std::abs(coords_[u] - coords_[v]);
      case Kind::euclid: {
        double acc = 0;
        for (int d = 0; d < dim_; ++d) {
          double diff = coords_[static_cast<std::size_t>(u) * dim_ + d] -
                        coords_[static_cast<std::size_t>(v) * dim_ + d];
          acc += diff * diff;
        }
        return std::sqrt(acc);
      }
    }
    return 0;
  }

  /// Appends a copy of vertex v at distance 0 from it; returns the new id.
  int duplicate_vertex(int v) {
    check_vertex(v);
    int id = n_;
    switch (kind_) {
      case Kind::matrix: {
        std::vector<double> grown(static_cast<std::size_t>(n_ + 1) * (n_ + 1), 0.0);
        for (int a = 0; a < n_; ++a)
          for (int b = 0; b < n_; ++b)
            grown[static_cast<std::size_t>(a) * (n_ + 1) + b] =
                matrix_[static_cast<std::size_t>(a) * n_ + b];
        for (int a = 0; a < n_; ++a) {
          grown[static_cast<std::size_t>(a) * (n_ + 1) + id] =
              matrix_[static_cast<std::size_t>(a) * n_ + v];
          grown[static_cast<std::size_t>(id) * (n_ + 1) + a] =
              matrix_[static_cast<std::size_t>(v) * n_ + a];
        }
        matrix_ = std::move(grown);
        break;
      }
      case Kind::line:
        coords_.push_back(coords_[v]);
        break;
      case Kind::euclid:
        for (int d = 0; d < dim_; ++d)
          coords_.push_back(coords_[static_cast<std::size_t>(v) * dim_ + d]);
        break;
    }
    ++n_;
    return id;
  }

  const std::vector<double>& raw_matrix() const { return matrix_; }

 private:
  void set_pairs(std::vector<TerminalPair> pairs) {
    for (const auto& p : pairs) {
      check_vertex(p.s);
      check_vertex(p.t);
    }
    if (static_cast<int>(pairs.size()) > n_)
      throw InputError("too many terminal pairs: k must be <= n");
    pairs_ = std::move(pairs);
  }

  Kind kind_ = Kind::line;
  int n_ = 0;
  int dim_ = 1;
  std::vector<double> matrix_;
  std::vector<double> coords_;
  std::vector<TerminalPair> pairs_;
};

/// Makes every terminal vertex appear in exactly one pair by duplicating any
/// vertex that is reused (the copy sits at distance 0 from its original).
inline void ensure_disjoint_pairs(MetricInstance& inst) {
  std::vector<char> used(inst.n(), 0);
  std::vector<TerminalPair> pairs = inst.pairs();
  bool changed = false;
  for (auto& p : pairs) {
    if (used[p.s]) {
      p.s = inst.duplicate_vertex(p.s);
      used.push_back(0);
      changed = true;
    }
    used[p.s] = 1;
    if (used[p.t]) {
      p.t = inst.duplicate_vertex(p.t);
      used.push_back(0);
      changed = true;
    }
    used[p.t] = 1;
  }
  if (changed) {
    MetricInstance rebuilt;
    switch (inst.kind()) {
      case MetricInstance::Kind::matrix:
        rebuilt = MetricInstance::from_matrix(inst.n(), inst.raw_matrix(), std::move(pairs));
        break;
      case MetricInstance::Kind::line:
        rebuilt = MetricInstance::from_line(inst.coords(), std::move(pairs));
        break;
      case MetricInstance::Kind::euclid:
        rebuilt = MetricInstance::from_points(inst.dim(), inst.coords(), std::move(pairs));
        break;
    }
    inst = std::move(rebuilt);
  }
}

/// Checks symmetry, zero diagonal, nonnegativity and the triangle inequality.
/// Exhaustive for n <= 64, seeded triple sampling above that.
inline void validate_metric(const MetricInstance& inst, std::uint64_t seed = 0,
                            int samples = 200000) {
  const int n = inst.n();
  const double slack = 1e-9;
  auto check_triple = [&](int u, int x, int v) {
    double direct = inst.weight(u, v);
    double via = inst.weight(u, x) + inst.weight(x, v);
    if (direct > via + slack * (1.0 + via))
      throw InputError("triangle inequality violated at (" + std::to_string(u) + "," +
                       std::to_string(x) + "," + std::to_string(v) + ")");
  };
  for (int u = 0; u < n; ++u) {
    if (inst.weight(u, u) != 0.0) throw InputError("nonzero self-distance");
  }
  if (inst.kind() == MetricInstance::Kind::matrix) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        double a = inst.weight(u, v);
        if (a < 0) throw InputError("negative distance");
        if (a != inst.weight(v, u)) throw InputError("asymmetric distance matrix");
      }
  }
  if (n <= 64) {
    for (int u = 0; u < n; ++u)
      for (int x = 0; x < n; ++x)
        for (int v = 0; v < n; ++v) check_triple(u, x, v);
  } else {
    Rng rng(mix_seed(seed, 0x7261u));
    for (int i = 0; i < samples; ++i)
      check_triple(rng.next_int(n), rng.next_int(n), rng.next_int(n));
  }
}

}  // namespace sfest
