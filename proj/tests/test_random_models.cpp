#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "rlab/random_models.hpp"

using namespace rlab;

namespace {

// All labelled graphs on n vertices with every degree equal to d.
std::set<std::vector<Edge>> enumerate_regular(int n, int d) {
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::set<std::vector<Edge>> out;
  const int m = static_cast<int>(pairs.size());
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) * 2 != n * d) continue;
    std::vector<int> deg(n, 0);
    std::vector<Edge> es;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) {
        ++deg[pairs[i].first];
        ++deg[pairs[i].second];
        es.push_back(pairs[i]);
      }
    if (std::all_of(deg.begin(), deg.end(), [d](int x) { return x == d; })) out.insert(es);
  }
  return out;
}

bool brute_graphic(std::vector<int> ds) {
  const int n = static_cast<int>(ds.size());
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<int> deg(n, 0);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) ++deg[pairs[i].first], ++deg[pairs[i].second];
    if (deg == ds) return true;
  }
  return false;
}

}  // namespace

TEST(RandomModels, EnumerationOracleCounts) {
  EXPECT_EQ(enumerate_regular(6, 2).size(), 70u);
  EXPECT_EQ(enumerate_regular(4, 2).size(), 3u);
}

TEST(RandomModels, RegularExamples) {
  for (std::uint64_t s = 0; s < 5; ++s) EXPECT_EQ(gen_regular(4, 3, s), complete_graph(4));
  auto c4 = enumerate_regular(4, 2);
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_TRUE(c4.count(gen_regular(4, 2, s).edges()));
  auto all = enumerate_regular(6, 2);
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_TRUE(all.count(gen_regular(6, 2, s).edges()));
  EXPECT_THROW(gen_regular(5, 3, 1), ValidationError);
  EXPECT_THROW(gen_regular(4, 4, 1), ValidationError);
}

TEST(RandomModels, RegularOutputsAreRegularAndSimple) {
  for (int d : {3, 5, 6, 8, 20}) {
    GenInfo info;
    auto g = gen_regular(60, d, 40 + d, GenMethod::Auto, &info);
    EXPECT_EQ(g.regular_degree(), d);
    EXPECT_EQ(g.m(), 30u * d);
    EXPECT_EQ(info.method, d <= 6 ? "pairing-rejection" : "pairing-switch-chain");
  }
}

TEST(RandomModels, ExactRejectionCapIsReported) {
  EXPECT_THROW(gen_regular(14, 10, 1, GenMethod::Exact), RuntimeFailure);
}

TEST(RandomModels, SameSeedSameGraph) {
  EXPECT_EQ(gen_regular(50, 4, 99), gen_regular(50, 4, 99));
  EXPECT_EQ(gen_regular(50, 12, 99), gen_regular(50, 12, 99));
  EXPECT_NE(gen_regular(50, 4, 99), gen_regular(50, 4, 100));
}

TEST(RandomModels, DegreeSequenceExamples) {
  EXPECT_EQ(gen_degree_sequence({{1, 1}}, 1), Graph(2, {{0, 1}}));
  EXPECT_EQ(gen_degree_sequence({{2, 2, 2}}, 1), cycle_graph(3));
  EXPECT_EQ(gen_degree_sequence({{3, 1, 1, 1}}, 1), Graph(4, {{0, 1}, {0, 2}, {0, 3}}));
  EXPECT_THROW(gen_degree_sequence({{3, 3, 1, 1}}, 1), ValidationError);
  EXPECT_THROW(gen_degree_sequence({{1, 1, 1}}, 1), ValidationError);
}

TEST(RandomModels, ErdosGallaiMatchesBruteForce) {
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> ds(n, 0);
    while (true) {
      EXPECT_EQ(is_graphic(ds), brute_graphic(ds)) << "n=" << n;
      int i = 0;
      while (i < n && ds[i] == n - 1) ds[i++] = 0;
      if (i == n) break;
      ++ds[i];
    }
  }
}

TEST(RandomModels, UnionExamples) {
  auto s = gen_union(8, 3, 3, 5);
  EXPECT_EQ(s.g.regular_degree(), 6);
  EXPECT_EQ(s.g.m(), 24u);
  for (auto [u, v] : s.g1.edges()) EXPECT_FALSE(s.g2.has_edge(u, v));
  EXPECT_THROW(gen_union(4, 3, 3, 5), RuntimeFailure);
}

TEST(RandomModels, UnionAlwaysDisjointAndRegular) {
  for (std::uint64_t seed = 0; seed < 20000; ++seed) {
    auto s = gen_union(10, 3, 3, seed);
    ASSERT_EQ(s.g.regular_degree(), 6);
    ASSERT_EQ(s.g.m(), s.g1.m() + s.g2.m());
  }
}

TEST(RandomModels, UnionLargeDegreesUsesSwitchChain) {
  auto s = gen_union(200, 20, 24, 3);
  EXPECT_EQ(s.g.regular_degree(), 44);
  EXPECT_EQ(s.g.m(), s.g1.m() + s.g2.m());
}

TEST(RandomModels, TwoHamiltonCycles) {
  auto k5 = gen_two_hamilton_cycles(5, 3);
  EXPECT_EQ(k5.g, complete_graph(5));
  for (int n : {6, 9, 50}) {
    auto s = gen_two_hamilton_cycles(n, n);
    EXPECT_EQ(s.g.m(), 2u * n);
    EXPECT_EQ(s.g.regular_degree(), 4);
    EXPECT_TRUE(is_connected(s.c1));
    EXPECT_EQ(s.c1.regular_degree(), 2);
  }
  EXPECT_THROW(gen_two_hamilton_cycles(4, 1), ValidationError);
}

TEST(RandomModels, StrategyBoardDecomposes) {
  auto b = gen_union_strategy(60, 12, 10, 8);
  EXPECT_EQ(b.g.regular_degree(), 22);
  EXPECT_EQ(b.g.m(), b.cycles.c1.m() + b.cycles.c2.m() + b.g12.m() + b.g2.m());
}

TEST(RandomModels, BinomialExamples) {
  EXPECT_EQ(gen_binomial(10, 0.0, 1).m(), 0u);
  EXPECT_EQ(gen_binomial(10, 1.0, 1), complete_graph(10));
  auto g = gen_binomial(1000, 0.01, 3);
  double mean = 499500 * 0.01, sd = std::sqrt(499500 * 0.01 * 0.99);
  EXPECT_LT(std::abs(static_cast<double>(g.m()) - mean), 4 * sd);
  EXPECT_THROW(gen_binomial(10, 1.5, 1), ValidationError);
}

TEST(RandomModels, EdgeProbBoundsExamples) {
  auto ds = DegreeSequence::regular(100, 3);
  auto b = edge_prob_bounds(ds, 0, 1);
  EXPECT_NEAR(b.lower, 3.0 / 297, 1e-12);
  EXPECT_NEAR(b.upper, 9.0 / 285, 1e-12);
  EXPECT_LE(b.lower, 3.0 / 99);
  EXPECT_GE(b.upper, 3.0 / 99);
  DegreeSequence ones{std::vector<int>(10, 1)};
  auto c = edge_prob_bounds(ones, 0, 1);
  EXPECT_TRUE(c.lower_clamped);
  EXPECT_EQ(c.lower, 0.0);
}

TEST(RandomModels, McKayExamples) {
  auto ds = DegreeSequence::regular(10, 3);
  auto r = mckay_quantities(ds, Graph(10));
  EXPECT_NEAR(r.gamma, 1.0, 1e-12);
  EXPECT_EQ(r.nu, 0.0);
  EXPECT_NEAR(r.window, std::exp(-2.0), 1e-12);
  std::vector<Edge> pm;
  for (int i = 0; i < 10; i += 2) pm.emplace_back(i, i + 1);
  EXPECT_NEAR(mckay_quantities(ds, Graph(10, pm)).nu, 1.5, 1e-12);
}

TEST(RandomModels, ContainmentAndChernoff) {
  EXPECT_NEAR(containment_bound(1000, 6, 10, 2).value, std::pow(0.012, 10), 1e-30);
  EXPECT_EQ(containment_bound(1000, 6, 0, 2).value, 1.0);
  EXPECT_TRUE(containment_bound(10, 6, 3, 2).vacuous);
  EXPECT_FALSE(containment_bound(10, 2, 100, 1, 0.1).valid_regime);
  EXPECT_NEAR(chernoff_tail(100, 0.5, 0.2, Tail::Lower), std::exp(-1.0), 1e-12);
  EXPECT_GT(chernoff_tail(100, 0.5, 1e-9, Tail::Upper), 0.999);
  EXPECT_GE(chernoff_tail(100, 0.5, 0.3, Tail::TwoSided), chernoff_tail(100, 0.5, 0.3, Tail::Upper));
}

TEST(RandomModels, StreamsAreIndependentOfOrder) {
  Rng a = stream(42, "x");
  Rng b = stream(42, "x");
  Rng c = stream(42, "y");
  EXPECT_EQ(a(), b());
  EXPECT_NE(stream(42, "x")(), c());
}
