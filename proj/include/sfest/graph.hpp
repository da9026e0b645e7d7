#pragma once

#include <cstdint>
#include <vector>

#include "sfest/common.hpp"

namespace sfest {

/// Simple undirected graph over vertices {0,...,n-1}, stored as a packed
/// symmetric bit matrix (5.1 MB at n = 6400, the largest bench size).
class Graph {
 public:
  explicit Graph(int n = 0)
      : n_(n), words_per_row_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_per_row_, 0) {}

  int n() const { return n_; }
  std::uint64_t edge_count() const { return m_; }

  void add_edge(int u, int v) {
    check(u);
    check(v);
    if (u == v) throw InputError("self-loops not allowed");
    if (has_edge(u, v)) return;
    set_bit(u, v);
    set_bit(v, u);
    ++m_;
  }

  bool has_edge(int u, int v) const {
    return (bits_[row(u) + (v >> 6)] >> (v & 63)) & 1ULL;
  }

  int degree(int v) const {
    int d = 0;
    for (std::size_t w = row(v); w < row(v) + words_per_row_; ++w)
      d += __builtin_popcountll(bits_[w]);
    return d;
  }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      std::uint64_t word = bits_[row(v) + w];
      while (word) {
        int b = __builtin_ctzll(word);
        out.push_back(static_cast<int>(w * 64 + b));
        word &= word - 1;
      }
    }
    return out;
  }

 private:
  void check(int v) const {
    if (v < 0 || v >= n_) throw InputError("vertex id out of range");
  }
  std::size_t row(int v) const { return static_cast<std::size_t>(v) * words_per_row_; }
  void set_bit(int u, int v) { bits_[row(u) + (v >> 6)] |= 1ULL << (v & 63); }

  int n_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
  std::uint64_t m_ = 0;
};

}  // namespace sfest
