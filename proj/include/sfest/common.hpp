#pragma once

#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

namespace sfest {

/// Raised for malformed arguments, out-of-range ids, violated preconditions.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised by file readers; carries the 1-based line number of the offending line.
struct ParseError : InputError {
  ParseError(const std::string& msg, int line_no)
      : InputError(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  int line;
};

/// Raised when a certificate construction detects a broken precondition.
struct CertificationError : std::runtime_error {
  explicit CertificationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Seeded generator owned by a single run or trial; never global.
struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  int next_int(int n) {  // uniform in [0, n)
    return std::uniform_int_distribution<int>(0, n - 1)(gen);
  }

  double next_double() {  // uniform in [0, 1)
    return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
  }

  std::uint64_t next_u64() { return gen(); }
};

namespace detail {

/// Shortest round-trippable decimal form, stable across runs.
inline std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace detail

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed for a sub-task (trial, level, ...).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt + 0x517cc1b727220a95ULL));
}

}  // namespace sfest
