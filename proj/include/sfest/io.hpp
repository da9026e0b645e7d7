#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sfest/common.hpp"
#include "sfest/graph.hpp"
#include "sfest/metric.hpp"

namespace sfest {

// Instance file:
//   metric <n> <k> <format>      format: matrix | line | euclid <dim>
//   n matrix rows or n coordinate lines
//   k lines "s t" (0-indexed)
// Graph file:
//   graph <n> <m>
//   m lines "u v"

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Returns the next non-empty line; throws if the stream is exhausted.
  std::string next(const std::string& what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
    }
    throw ParseError("unexpected end of file, expected " + what, line_no_);
  }

  int line_no() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

inline std::vector<double> parse_numbers(const std::string& line, int expected, int line_no,
                                         const std::string& what) {
  std::istringstream ss(line);
  std::vector<double> out;
  double x;
  while (ss >> x) out.push_back(x);
  std::string trailing;
  if (ss.fail() && !ss.eof()) throw ParseError("malformed number in " + what, line_no);
  if (static_cast<int>(out.size()) != expected)
    throw ParseError(what + ": expected " + std::to_string(expected) + " values, got " +
                         std::to_string(out.size()),
                     line_no);
  return out;
}

}  // namespace detail


/// Reads an instance, duplicates shared terminals, validates the metric.
inline MetricInstance parse_instance(std::istream& in) {
  detail::LineReader reader(in);
  std::string header = reader.next("header");
  std::istringstream hs(header);
  std::string tag, format;
  int n = 0, k = 0;
  hs >> tag >> n >> k >> format;
  if (tag != "metric" || hs.fail())
    throw ParseError("expected header 'metric <n> <k> <format>'", reader.line_no());
  if (n < 1) throw ParseError("vertex count must be >= 1", reader.line_no());
  if (k < 0) throw ParseError("pair count must be >= 0", reader.line_no());
  if (k > n) throw ParseError("too many terminal pairs: k must be <= n", reader.line_no());

  int dim = 1;
  if (format == "euclid") {
    if (!(hs >> dim) || dim < 1)
      throw ParseError("euclid format requires a positive dimension", reader.line_no());
  } else if (format != "matrix" && format != "line") {
    throw ParseError("unknown format token '" + format + "'", reader.line_no());
  }

  std::vector<double> values;
  if (format == "matrix") {
    values.reserve(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
      std::string line = reader.next("matrix row " + std::to_string(r));
      auto row = detail::parse_numbers(line, n, reader.line_no(),
                                       "matrix row " + std::to_string(r));
      values.insert(values.end(), row.begin(), row.end());
    }
  } else {
    int per_line = (format == "line") ? 1 : dim;
    values.reserve(static_cast<std::size_t>(n) * per_line);
    for (int r = 0; r < n; ++r) {
      std::string line = reader.next("coordinate line " + std::to_string(r));
      auto row = detail::parse_numbers(line, per_line, reader.line_no(),
                                       "coordinate line " + std::to_string(r));
      values.insert(values.end(), row.begin(), row.end());
    }
  }

  std::vector<TerminalPair> pairs;
  pairs.reserve(k);
  for (int i = 0; i < k; ++i) {
    std::string line = reader.next("pair line " + std::to_string(i));
    auto nums = detail::parse_numbers(line, 2, reader.line_no(), "pair line " + std::to_string(i));
    pairs.push_back({static_cast<int>(nums[0]), static_cast<int>(nums[1])});
  }

  MetricInstance inst;
  if (format == "matrix")
    inst = MetricInstance::from_matrix(n, std::move(values), std::move(pairs));
  else if (format == "line")
    inst = MetricInstance::from_line(std::move(values), std::move(pairs));
  else
    inst = MetricInstance::from_points(dim, std::move(values), std::move(pairs));

  ensure_disjoint_pairs(inst);
  validate_metric(inst);
  return inst;
}

inline MetricInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file: " + path);
  return parse_instance(in);
}

inline void write_instance(std::ostream& out, const MetricInstance& inst) {
  switch (inst.kind()) {
    case MetricInstance::Kind::matrix: {
      out << "metric " << inst.n() << ' ' << inst.k() << " matrix\n";
      for (int u = 0; u < inst.n(); ++u) {
        for (int v = 0; v < inst.n(); ++v)
          out << (v ? " " : "") << detail::fmt_double(inst.weight(u, v));
        out << '\n';
      }
      break;
    }
    case MetricInstance::Kind::line: {
      out << "metric " << inst.n() << ' ' << inst.k() << " line\n";
      for (int u = 0; u < inst.n(); ++u) out << detail::fmt_double(inst.coords()[u]) << '\n';
      break;
    }
    case MetricInstance::Kind::euclid: {
      out << "metric " << inst.n() << ' ' << inst.k() << " euclid " << inst.dim() << '\n';
      for (int u = 0; u < inst.n(); ++u) {
        for (int d = 0; d < inst.dim(); ++d)
          out << (d ? " " : "")
              << detail::fmt_double(inst.coords()[static_cast<std::size_t>(u) * inst.dim() + d]);
        out << '\n';
      }
      break;
    }
  }
  for (const auto& p : inst.pairs()) out << p.s << ' ' << p.t << '\n';
}

inline void write_instance_file(const std::string& path, const MetricInstance& inst) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  write_instance(out, inst);
}

inline Graph parse_graph(std::istream& in) {
  detail::LineReader reader(in);
  std::string header = reader.next("header");
  std::istringstream hs(header);
  std::string tag;
  long long n = 0, m = 0;
  hs >> tag >> n >> m;
  if (tag != "graph" || hs.fail()) throw ParseError("expected header 'graph <n> <m>'", reader.line_no());
  if (n < 1) throw ParseError("vertex count must be >= 1", reader.line_no());
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    std::string line = reader.next("edge line " + std::to_string(i));
    auto nums = detail::parse_numbers(line, 2, reader.line_no(), "edge line " + std::to_string(i));
    int u = static_cast<int>(nums[0]);
    int v = static_cast<int>(nums[1]);
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError("edge endpoint out of range", reader.line_no());
    if (u == v) throw ParseError("self-loop not allowed", reader.line_no());
    g.add_edge(u, v);
  }
  return g;
}

inline Graph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path);
  return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "graph " << g.n() << ' ' << g.edge_count() << '\n';
  for (int u = 0; u < g.n(); ++u)
    for (int v : g.neighbors(u))
      if (u < v) out << u << ' ' << v << '\n';
}

inline void write_graph_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open output file: " + path);
  write_graph(out, g);
}

}  // namespace sfest
