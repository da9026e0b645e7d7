#pragma once

#include <cstdint>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/permutation.hpp"

namespace sfest {

// Layers of the augmented graph H: the original vertices V (n of them), a
// middle layer V2 of 2n vertices adjacent to everything outside itself, and
// a top layer V3 of n vertices adjacent only to V2.
enum class HLayer : std::uint8_t { base = 0, middle = 1, top = 2 };

/// A permutation of the 4n augmented vertices is good when it opens in the
/// top layer and every prefix holds at least as many middle-layer vertices
/// as base-layer ones (the ballot condition).
inline bool is_good_permutation(const Permutation& pi_h, const std::vector<HLayer>& layer_of) {
  if (pi_h.size() != static_cast<int>(layer_of.size()))
    throw InputError("layer map size does not match permutation");
  std::size_t n_base = 0, n_mid = 0, n_top = 0;
  for (HLayer l : layer_of) {
    if (l == HLayer::base)
      ++n_base;
    else if (l == HLayer::middle)
      ++n_mid;
    else
      ++n_top;
  }
  if (n_mid != 2 * n_base || n_top != n_base || n_base == 0)
    throw InputError("layer sizes must be (n, 2n, n)");

  if (layer_of[pi_h.at(0)] != HLayer::top) return false;
  long long mid_minus_base = 0;
  for (int r = 0; r < pi_h.size(); ++r) {
    HLayer l = layer_of[pi_h.at(r)];
    if (l == HLayer::middle) ++mid_minus_base;
    if (l == HLayer::base) --mid_minus_base;
    if (mid_minus_base < 0) return false;
  }
  return true;
}

/// Canonical layer assignment over ids {0,...,4n-1}: base = [0,n),
/// middle = [n,3n), top = [3n,4n).
inline std::vector<HLayer> canonical_layers(int n) {
  std::vector<HLayer> layers(4 * n, HLayer::base);
  for (int v = n; v < 3 * n; ++v) layers[v] = HLayer::middle;
  for (int v = 3 * n; v < 4 * n; ++v) layers[v] = HLayer::top;
  return layers;
}

/// Monte-Carlo estimate of the probability that a uniform permutation of the
/// 4n augmented vertices is good.
inline double good_permutation_rate(int n, int trials, std::uint64_t seed) {
  if (n < 1) throw InputError("good_permutation_rate requires n >= 1");
  if (trials < 1) throw InputError("good_permutation_rate requires trials >= 1");
  auto layers = canonical_layers(n);
  Rng rng(seed);
  int good = 0;
  for (int t = 0; t < trials; ++t)
    if (is_good_permutation(random_permutation(4 * n, rng), layers)) ++good;
  return static_cast<double>(good) / trials;
}

}  // namespace sfest
