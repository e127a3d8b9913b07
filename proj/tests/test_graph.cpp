#include <gtest/gtest.h>

#include <sstream>

#include "rlab/graph.hpp"
#include "rlab/random_models.hpp"

using namespace rlab;

namespace {

// Brute force over all nonempty subsets of size <= tau.
std::pair<long long, long long> brute_rho(const Graph& g, int tau) {
  long long be = 0, bs = 1;
  const int n = g.n();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int s = __builtin_popcount(mask);
    if (s > tau) continue;
    long long e = 0;
    for (auto [u, v] : g.edges())
      if ((mask >> u & 1) && (mask >> v & 1)) ++e;
    if (e * bs > be * s) be = e, bs = s;
  }
  return {be, bs};
}

}  // namespace

TEST(GraphCore, RejectsLoopsAndParallelEdges) {
  EXPECT_THROW(Graph(3, {{0, 0}}), ValidationError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), ValidationError);
  EXPECT_THROW(Graph(3, {{0, 3}}), ValidationError);
}

TEST(GraphCore, AdjacencyIsSymmetricAndSorted) {
  auto g = gen_binomial(40, 0.2, 7);
  long long sum = 0;
  for (int v = 0; v < g.n(); ++v) {
    sum += g.degree(v);
    EXPECT_TRUE(std::is_sorted(g.neighbors(v).begin(), g.neighbors(v).end()));
    for (int w : g.neighbors(v)) EXPECT_TRUE(g.has_edge(w, v));
  }
  EXPECT_EQ(sum, 2 * static_cast<long long>(g.m()));
}

TEST(GraphCore, InducedBipartiteExamples) {
  auto k4 = complete_graph(4);
  EXPECT_EQ(induced_bipartite(k4, {{1, 1, 2, 2}}).m(), 4u);
  EXPECT_EQ(induced_bipartite(k4, {{1, 1, 1, 1}}).m(), 0u);
  auto c6 = cycle_graph(6);
  EXPECT_EQ(induced_bipartite(c6, {{1, 2, 1, 2, 1, 2}}).m(), 6u);
  EXPECT_THROW(induced_bipartite(c6, {{1, 2}}), ValidationError);
}

TEST(GraphCore, BipartitePlusSidesCountsEveryEdge) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = gen_binomial(25, 0.3, trial);
    Partition p;
    std::vector<int> a, b;
    for (int v = 0; v < g.n(); ++v) {
      p.side.push_back(coin(rng) ? 1 : 2);
      (p.side.back() == 1 ? a : b).push_back(v);
    }
    auto cross = induced_bipartite(g, p);
    EXPECT_EQ(static_cast<long long>(cross.m()) + edges_within(g, a) + edges_within(g, b),
              static_cast<long long>(g.m()));
  }
}

TEST(GraphCore, RemoveSubgraphExamples) {
  auto k4 = complete_graph(4);
  auto r = remove_subgraph(k4, Graph(4, {{0, 1}}));
  EXPECT_EQ(r.graph.m(), 5u);
  EXPECT_EQ(r.delta_h, 1);
  auto same = remove_subgraph(k4, Graph(4));
  EXPECT_EQ(same.graph, k4);
  EXPECT_EQ(same.delta_h, 0);
  auto c6 = cycle_graph(6);
  auto gone = remove_subgraph(c6, c6);
  EXPECT_EQ(gone.graph.m(), 0u);
  EXPECT_EQ(gone.delta_h, 2);
  EXPECT_THROW(remove_subgraph(c6, Graph(6, {{0, 2}})), ValidationError);
}

TEST(GraphCore, RemoveThenReAddRestores) {
  auto g = gen_binomial(30, 0.3, 11);
  std::vector<Edge> hs;
  auto es = g.edges();
  for (std::size_t i = 0; i < es.size(); i += 3) hs.push_back(es[i]);
  Graph h(g.n(), hs);
  auto r = remove_subgraph(g, h);
  EXPECT_EQ(graph_union(r.graph, h), g);
}

TEST(GraphCore, DensityExamples) {
  auto tri = cycle_graph(3);
  auto r = density_rho(tri, 3);
  EXPECT_EQ(r.edges, 3);
  EXPECT_EQ(r.size, 3);
  EXPECT_TRUE(r.exact);
  auto k4 = density_rho(complete_graph(4), 4);
  EXPECT_EQ(k4.edges * 2, k4.size * 3);
  auto edge = density_rho(Graph(2, {{0, 1}}), 2);
  EXPECT_EQ(edge.edges * 2, edge.size);
  EXPECT_THROW(density_rho(tri, 0), ValidationError);
  EXPECT_THROW(density_rho(tri, 4), ValidationError);
}

TEST(GraphCore, DensityExactMatchesBruteForce) {
  for (int trial = 0; trial < 60; ++trial) {
    int n = 5 + trial % 8;
    auto g = gen_binomial(n, 0.2 + 0.05 * (trial % 7), 100 + trial);
    for (int tau : {2, 3, n / 2 + 1, n}) {
      auto r = density_rho(g, tau);
      auto [be, bs] = brute_rho(g, tau);
      ASSERT_TRUE(r.exact);
      EXPECT_EQ(r.edges * bs, be * r.size) << "n=" << n << " tau=" << tau;
      EXPECT_EQ(edges_within(g, r.witness), r.edges);
      EXPECT_EQ(static_cast<long long>(r.witness.size()), r.size);
    }
  }
}

TEST(GraphCore, DensityHeuristicWitnessIsValid) {
  auto g = gen_binomial(80, 0.1, 5);
  auto r = density_rho(g, 30);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(edges_within(g, r.witness), r.edges);
  EXPECT_LE(r.size, 30);
}

TEST(GraphCore, EdgeListRoundTrip) {
  auto g = gen_binomial(20, 0.3, 9);
  std::stringstream ss;
  write_edge_list(ss, g);
  auto text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), std::to_string(g.n()) + " " + std::to_string(g.m()));
  EXPECT_EQ(read_edge_list(ss), g);
}

TEST(GraphCore, EdgeListRejectsMalformed) {
  std::stringstream bad1("3 1\n1 0\n");
  EXPECT_THROW(read_edge_list(bad1), ValidationError);
  std::stringstream bad2("3 2\n0 1\n");
  EXPECT_THROW(read_edge_list(bad2), ValidationError);
  std::stringstream bad3("x");
  EXPECT_THROW(read_edge_list(bad3), ValidationError);
}

TEST(GraphCore, NeighborhoodIsExternal) {
  auto c6 = cycle_graph(6);
  EXPECT_EQ(neighborhood(c6, {0, 1}), (std::vector<int>{2, 5}));
}
