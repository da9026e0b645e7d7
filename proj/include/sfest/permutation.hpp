#pragma once

#include <vector>

#include "sfest/common.hpp"

namespace sfest {

/// An ordering of a subset of the vertex ids {0, ..., universe-1}.
/// order()[r] is the vertex at rank r; rank(v) inverts it (-1 if v is absent).
class Permutation {
 public:
  Permutation() = default;

  Permutation(int universe, std::vector<int> order)
      : order_(std::move(order)), rank_(universe, -1) {
    for (int r = 0; r < static_cast<int>(order_.size()); ++r) {
      int v = order_[r];
      if (v < 0 || v >= universe) throw InputError("permutation element out of range");
      if (rank_[v] != -1) throw InputError("permutation element repeated");
      rank_[v] = r;
    }
  }

  int size() const { return static_cast<int>(order_.size()); }
  int universe() const { return static_cast<int>(rank_.size()); }
  const std::vector<int>& order() const { return order_; }
  int at(int r) const { return order_[r]; }
  int rank(int v) const { return rank_[v]; }
  bool contains(int v) const { return v >= 0 && v < universe() && rank_[v] >= 0; }

  /// Keeps only the members of `subset`, preserving relative order.
  Permutation restricted_to(const std::vector<int>& subset) const {
    std::vector<char> keep(rank_.size(), 0);
    for (int v : subset) {
      if (!contains(v)) throw InputError("restriction subset contains foreign vertex");
      keep[v] = 1;
    }
    std::vector<int> sub;
    sub.reserve(subset.size());
    for (int v : order_)
      if (keep[v]) sub.push_back(v);
    return Permutation(universe(), std::move(sub));
  }

 private:
  std::vector<int> order_;
  std::vector<int> rank_;
};

/// Uniform permutation of {0,...,n-1} via Fisher-Yates; same (n, seed) gives
/// the same output.
inline Permutation random_permutation(int n, Rng& rng) {
  if (n < 1) throw InputError("random_permutation requires n >= 1");
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = rng.next_int(i + 1);
    std::swap(order[i], order[j]);
  }
  return Permutation(n, std::move(order));
}

inline Permutation random_permutation(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_permutation(n, rng);
}

inline Permutation identity_permutation(int n) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  return Permutation(n, std::move(order));
}

}  // namespace sfest
