#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "sfest/io.hpp"
#include "sfest/metric.hpp"
#include "sfest/oracle.hpp"
#include "sfest/permutation.hpp"
#include "support/stats.hpp"

using namespace sfest;

namespace {

MetricInstance line_instance(std::vector<double> pos, std::vector<TerminalPair> pairs) {
  return MetricInstance::from_line(std::move(pos), std::move(pairs));
}

TEST(DistanceOracle, SelfQueryIsZeroAndCounted) {
  auto inst = line_instance({0, 2, 4}, {});
  CountingDistanceOracle oracle(inst);
  EXPECT_EQ(oracle.distance(1, 1), 0.0);
  EXPECT_EQ(oracle.queries(), 1u);
}

TEST(DistanceOracle, LineDistances) {
  auto inst = line_instance({0, 2, 4}, {});
  CountingDistanceOracle oracle(inst);
  EXPECT_EQ(oracle.distance(0, 2), 4.0);
}

TEST(DistanceOracle, ScaleAppliesButDoesNotAffectCounting) {
  auto inst = line_instance({0, 2, 4}, {});
  CountingDistanceOracle oracle(inst, 0.5);
  EXPECT_EQ(oracle.distance(0, 2), 2.0);
  EXPECT_EQ(oracle.queries(), 1u);
}

TEST(DistanceOracle, OutOfRangeIdIsAnError) {
  auto inst = line_instance({0, 2, 4}, {});
  CountingDistanceOracle oracle(inst);
  EXPECT_THROW(oracle.distance(0, 3), InputError);
}

TEST(AdjacencyOracle, EdgelessAndComplete) {
  Graph empty(4);
  EdgeSetOracle o1(empty);
  EXPECT_FALSE(o1.edge(0, 3));
  Graph complete(4);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) complete.add_edge(u, v);
  EdgeSetOracle o2(complete);
  EXPECT_TRUE(o2.edge(2, 3));
}

TEST(AdjacencyOracle, SelfProbeIsAnError) {
  Graph g(3);
  EdgeSetOracle o(g);
  EXPECT_THROW(o.edge(1, 1), InputError);
}

TEST(AdjacencyOracle, DerivedBallGraphRule) {
  // edge iff w < 2 tau with tau = 2: distance 3 < 4 is an edge
  auto inst = line_instance({0, 3, 10}, {});
  CountingDistanceOracle dist(inst);
  BallGraphOracle ball(dist, {0, 1, 2}, 2.0);
  EXPECT_TRUE(ball.edge(0, 1));
  EXPECT_FALSE(ball.edge(0, 2));
}

TEST(AdjacencyOracle, DerivedCounterDelegates) {
  auto inst = line_instance({0, 3, 10}, {});
  CountingDistanceOracle dist(inst);
  BallGraphOracle ball(dist, {0, 1, 2}, 2.0);
  ball.edge(0, 1);
  ball.edge(1, 2);
  EXPECT_EQ(ball.queries(), 2u);
  EXPECT_EQ(dist.queries(), 2u);
}

TEST(QueryCount, FreshOracleAndAfterQueries) {
  auto inst = line_instance({0, 2, 4}, {});
  CountingDistanceOracle oracle(inst);
  EXPECT_EQ(oracle.queries(), 0u);
  oracle.distance(0, 1);
  oracle.distance(1, 2);
  oracle.distance(0, 2);
  EXPECT_EQ(oracle.queries(), 3u);
}

TEST(Permutation, SingleElement) {
  Permutation pi = random_permutation(1, 99u);
  EXPECT_EQ(pi.size(), 1);
  EXPECT_EQ(pi.at(0), 0);
}

TEST(Permutation, SameSeedSameOutput) {
  Permutation a = random_permutation(20, 7u);
  Permutation b = random_permutation(20, 7u);
  EXPECT_EQ(a.order(), b.order());
}

TEST(Permutation, ZeroLengthIsAnError) {
  EXPECT_THROW(random_permutation(0, 1u), InputError);
}

TEST(Permutation, FirstElementUniform) {
  // n = 5: each vertex first with frequency 0.2 +- 0.01 over 1e5 samples.
  const int n = 5, samples = 100000;
  Rng rng(2024);
  std::vector<long long> first(n, 0);
  for (int i = 0; i < samples; ++i) ++first[random_permutation(n, rng).at(0)];
  for (int v = 0; v < n; ++v) {
    double freq = static_cast<double>(first[v]) / samples;
    EXPECT_NEAR(freq, 0.2, 0.01);
  }
  double stat = teststat::chi_squared_uniform(first);
  EXPECT_LE(stat, teststat::chi_squared_quantile(n - 1, teststat::kZ99));
}

TEST(Permutation, RestrictKeepsRelativeOrder) {
  // pi = (c, a, d, b) over ids a=0,b=1,c=2,d=3; subset {a,b} -> (a,b)
  Permutation pi(4, {2, 0, 3, 1});
  Permutation sub = pi.restricted_to({0, 1});
  EXPECT_EQ(sub.order(), (std::vector<int>{0, 1}));
}

TEST(Permutation, RestrictToAllAndEmpty) {
  Permutation pi(4, {2, 0, 3, 1});
  EXPECT_EQ(pi.restricted_to({0, 1, 2, 3}).order(), pi.order());
  EXPECT_EQ(pi.restricted_to({}).size(), 0);
}

TEST(Permutation, RestrictForeignVertexIsAnError) {
  Permutation pi(4, {2, 0, 3, 1});
  EXPECT_THROW(pi.restricted_to({4}), InputError);
  Permutation partial(4, {2, 0});
  EXPECT_THROW(partial.restricted_to({1}), InputError);
}

TEST(Permutation, RestrictionComposes) {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    Permutation pi = random_permutation(12, rng);
    std::vector<int> a, b;
    for (int v = 0; v < 12; ++v)
      if (rng.next_double() < 0.6) a.push_back(v);
    for (int v : a)
      if (rng.next_double() < 0.5) b.push_back(v);
    EXPECT_EQ(pi.restricted_to(a).restricted_to(b).order(), pi.restricted_to(b).order());
  }
}

TEST(Permutation, RestrictionOfUniformIsUniform) {
  // Restrict uniform permutations of 5 elements to a fixed 3-subset; all 6
  // orderings of the subset should be equally likely.
  const int samples = 60000;
  Rng rng(77);
  std::map<std::vector<int>, long long> counts;
  for (int i = 0; i < samples; ++i)
    ++counts[random_permutation(5, rng).restricted_to({0, 1, 2}).order()];
  ASSERT_EQ(counts.size(), 6u);
  std::vector<long long> tallies;
  for (const auto& [order, c] : counts) tallies.push_back(c);
  double stat = teststat::chi_squared_uniform(tallies);
  EXPECT_LE(stat, teststat::chi_squared_quantile(5, teststat::kZ99));
}

TEST(Metric, ValidationPassesForGeneratedKinds) {
  EXPECT_NO_THROW(validate_metric(line_instance({0, 1, 5, 9}, {})));
  auto euclid = MetricInstance::from_points(2, {0, 0, 1, 0, 0.5, 2}, {});
  EXPECT_NO_THROW(validate_metric(euclid));
}

TEST(Metric, ValidationCatchesBrokenTriangle) {
  // d(0,2) = 10 but d(0,1)+d(1,2) = 2
  std::vector<double> m = {0, 1, 10, 1, 0, 1, 10, 1, 0};
  auto inst = MetricInstance::from_matrix(3, m, {});
  EXPECT_THROW(validate_metric(inst), InputError);
}

TEST(Metric, ValidationCatchesAsymmetry) {
  std::vector<double> m = {0, 1, 2, 0};
  auto inst = MetricInstance::from_matrix(2, m, {});
  EXPECT_THROW(validate_metric(inst), InputError);
}

TEST(Metric, SharedTerminalsAreDuplicatedAtDistanceZero) {
  auto inst = line_instance({0, 4, 8}, {{0, 1}, {1, 2}});
  ensure_disjoint_pairs(inst);
  EXPECT_EQ(inst.n(), 4);
  ASSERT_EQ(inst.k(), 2);
  int copy = inst.pairs()[1].s;
  EXPECT_EQ(copy, 3);
  EXPECT_EQ(inst.weight(copy, 1), 0.0);
  EXPECT_EQ(inst.weight(copy, 2), 4.0);
  // all four terminal slots distinct now
  std::vector<int> terms{inst.pairs()[0].s, inst.pairs()[0].t, inst.pairs()[1].s,
                         inst.pairs()[1].t};
  std::sort(terms.begin(), terms.end());
  EXPECT_EQ(std::unique(terms.begin(), terms.end()), terms.end());
}

TEST(Metric, TooManyPairsRejected) {
  EXPECT_THROW(line_instance({0, 1}, {{0, 1}, {1, 0}, {0, 1}}), InputError);
}

TEST(Io, RoundTripAllKinds) {
  std::vector<MetricInstance> cases;
  cases.push_back(line_instance({0, 2.5, 4}, {{0, 2}}));
  cases.push_back(MetricInstance::from_points(2, {0, 0, 1, 0, 0, 1, 1, 1}, {{0, 3}, {1, 2}}));
  cases.push_back(MetricInstance::from_matrix(3, {0, 1, 2, 1, 0, 1, 2, 1, 0}, {{0, 2}}));
  for (const auto& inst : cases) {
    std::ostringstream out;
    write_instance(out, inst);
    std::istringstream in(out.str());
    MetricInstance back = parse_instance(in);
    EXPECT_EQ(back.n(), inst.n());
    EXPECT_EQ(back.kind(), inst.kind());
    EXPECT_EQ(back.pairs().size(), inst.pairs().size());
    for (int u = 0; u < inst.n(); ++u)
      for (int v = 0; v < inst.n(); ++v) EXPECT_EQ(back.weight(u, v), inst.weight(u, v));
  }
}

TEST(Io, TruncatedMatrixRowNamesTheLine) {
  std::istringstream in("metric 2 0 matrix\n0 1\n0\n");
  try {
    parse_instance(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Io, UnknownFormatTokenIsAnError) {
  std::istringstream in("metric 2 0 fancy\n0\n1\n");
  EXPECT_THROW(parse_instance(in), ParseError);
}

TEST(Io, PairCountAboveVerticesIsAnError) {
  std::istringstream in("metric 1 2 line\n0\n0 0\n0 0\n");
  EXPECT_THROW(parse_instance(in), ParseError);
}

TEST(Io, GraphRoundTrip) {
  Graph g(5);
  g.add_edge(0, 3);
  g.add_edge(2, 4);
  g.add_edge(1, 2);
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream in(out.str());
  Graph back = parse_graph(in);
  EXPECT_EQ(back.n(), 5);
  EXPECT_EQ(back.edge_count(), 3u);
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v) {
      if (u == v) continue;
      EXPECT_EQ(back.has_edge(u, v), g.has_edge(u, v));
    }
}

TEST(Io, ParseAppliesTerminalDeduplication) {
  std::istringstream in("metric 3 2 line\n0\n4\n8\n0 1\n1 2\n");
  MetricInstance inst = parse_instance(in);
  EXPECT_EQ(inst.n(), 4);
  EXPECT_EQ(inst.pairs()[1].s, 3);
}

}  // namespace
