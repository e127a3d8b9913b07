#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "rlab/posa.hpp"
#include "rlab/random_models.hpp"

using namespace rlab;

namespace {

// Permutation search over all vertex orders; fine up to n = 9.
int brute_longest_path(const Graph& g) {
  const int n = g.n();
  int best = 0;
  std::vector<int> p;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> void {
    best = std::max(best, static_cast<int>(p.size()) - 1);
    for (int w = 0; w < n; ++w) {
      if (used[w] || (!p.empty() && !g.has_edge(p.back(), w))) continue;
      used[w] = 1;
      p.push_back(w);
      self(self);
      p.pop_back();
      used[w] = 0;
    }
  };
  rec(rec);
  return best;
}

bool brute_hamiltonian(const Graph& g) {
  const int n = g.n();
  if (n < 3) return false;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (is_hamilton_cycle(g, perm)) return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

Graph path_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, es);
}

}  // namespace

TEST(Rotation, Example) {
  auto k4 = complete_graph(4);
  PosaState s;
  s.path = {0, 1, 2, 3};
  auto r = elementary_rotation(k4, s, 1);
  EXPECT_EQ(r.path, (std::vector<int>{0, 1, 3, 2}));
  ASSERT_EQ(r.log.size(), 1u);
  EXPECT_EQ(r.log[0].broken, Edge(1, 2));
  EXPECT_EQ(r.log[0].used, Edge(1, 3));
  EXPECT_THROW(elementary_rotation(k4, s, 2), ValidationError);
  EXPECT_THROW(elementary_rotation(path_graph(4), s, 1), ValidationError);
}

TEST(Rotation, PreservesVertexSetAndLength) {
  auto g = gen_regular(40, 6, 3);
  auto p = longest_path_heuristic(g, 5, 1);
  PosaState s = p;
  Rng rng(9);
  for (int step = 0; step < 200; ++step) {
    std::vector<int> piv;
    for (int y : g.neighbors(s.end())) {
      auto it = std::find(s.path.begin(), s.path.end(), y);
      if (it != s.path.end() && it - s.path.begin() <= s.length() - 2) piv.push_back(y);
    }
    if (piv.empty()) break;
    auto next = elementary_rotation(g, s, piv[uniform_int(rng, 0, static_cast<int>(piv.size()) - 1)]);
    ASSERT_TRUE(is_path_of(g, next.path));
    ASSERT_EQ(next.length(), s.length());
    ASSERT_EQ(next.start(), s.start());
    auto a = s.path, b = next.path;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    ASSERT_EQ(a, b);
    s = next;
  }
}

TEST(Closure, CompleteGraphAndPath) {
  PosaState s;
  s.path = {0, 1, 2, 3};
  auto c = endpoint_expansion(complete_graph(4), s);
  std::set<int> ends(c.endpoints.begin(), c.endpoints.end());
  EXPECT_EQ(ends, (std::set<int>{1, 2, 3}));
  for (std::size_t k = 0; k < c.paths.size(); ++k) {
    EXPECT_EQ(c.paths[k].back(), c.endpoints[k]);
    EXPECT_TRUE(is_path_of(complete_graph(4), c.paths[k]));
    // replay the pivots
    PosaState r = s;
    for (int y : c.pivots[k]) r = elementary_rotation(complete_graph(4), r, y);
    EXPECT_EQ(r.path, c.paths[k]);
  }
  // a bare path admits no rotation
  s.path = {0, 1, 2, 3, 4, 5};
  auto single = endpoint_expansion(path_graph(6), s);
  EXPECT_EQ(single.endpoints, (std::vector<int>{5}));
  // extendable input is rejected
  s.path = {0, 1, 2};
  EXPECT_THROW(endpoint_expansion(path_graph(4), s), ValidationError);
}

TEST(Closure, PosaLemmaOnLongestPaths) {
  // For a longest path with fixed start, |N(S)| <= 2|S| - 1 over the endpoint set S.
  for (int t = 0; t < 40; ++t) {
    auto g = gen_binomial(12, 0.25 + 0.01 * t, 70 + t);
    PosaState s;
    s.path = longest_path_exact(g);
    if (s.path.size() < 2) continue;
    auto c = endpoint_expansion(g, s);
    std::vector<int> ends = c.endpoints;
    std::sort(ends.begin(), ends.end());
    auto nb = neighborhood(g, ends);
    EXPECT_LE(static_cast<int>(nb.size()), 2 * static_cast<int>(ends.size()) - 1) << t;
  }
}

TEST(LongestPath, DpAgreesWithPermutationSearch) {
  for (int t = 0; t < 120; ++t) {
    int n = 3 + t % 7;
    auto g = gen_binomial(n, 0.15 + 0.05 * (t % 10), 300 + t);
    auto p = longest_path_exact(g);
    ASSERT_TRUE(is_path_of(g, p));
    ASSERT_EQ(static_cast<int>(p.size()) - 1, brute_longest_path(g)) << t;
  }
}

TEST(Hamiltonicity, Examples) {
  auto pet = is_hamiltonian_exact(petersen_graph());
  EXPECT_EQ(pet.status, HamStatus::NotHamiltonian);
  EXPECT_EQ(pet.proof, "exhaustive search");
  EXPECT_EQ(static_cast<int>(longest_path_exact(petersen_graph()).size()), 10);
  auto k5 = is_hamiltonian_exact(complete_graph(5));
  EXPECT_TRUE(k5.hamiltonian());
  EXPECT_TRUE(is_hamilton_cycle(complete_graph(5), k5.cycle));
  EXPECT_EQ(is_hamiltonian_exact(path_graph(6)).proof, "vertex of degree below two");
  Graph bowtie(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  EXPECT_EQ(is_hamiltonian_exact(bowtie).proof, "cut vertex 2");
}

TEST(Hamiltonicity, ExactAgreesWithOracles) {
  for (int t = 0; t < 300; ++t) {
    int n = 4 + t % 6;
    auto g = gen_binomial(n, 0.3 + 0.05 * (t % 10), 1000 + t);
    auto r = is_hamiltonian_exact(g);
    ASSERT_EQ(r.hamiltonian(), brute_hamiltonian(g)) << t;
    ASSERT_EQ(r.hamiltonian(), !hamilton_cycle_dp(g).empty()) << t;
    if (r.hamiltonian()) {
      ASSERT_TRUE(is_hamilton_cycle(g, r.cycle));
    }
  }
  for (int t = 0; t < 30; ++t) {
    auto g = gen_binomial(18, 0.2, 2000 + t);
    ASSERT_EQ(is_hamiltonian_exact(g).hamiltonian(), !hamilton_cycle_dp(g).empty()) << t;
  }
}

TEST(Hamiltonicity, HeuristicFindsCyclesInRandomRegular) {
  for (int d : {3, 4, 10}) {
    auto g = gen_regular(400, d, 11 + d);
    auto r = decide_hamiltonicity(g, 50, 3);
    EXPECT_TRUE(r.hamiltonian()) << d;
    EXPECT_TRUE(is_hamilton_cycle(g, r.cycle));
  }
  std::vector<Edge> es;
  for (int i = 0; i < 40; ++i) es.emplace_back(i, (i + 1) % 40);
  for (int i = 0; i < 40; ++i) es.emplace_back(40 + i, 40 + (i + 1) % 40);
  EXPECT_EQ(decide_hamiltonicity(Graph(80, es)).proof, "disconnected");
}

TEST(Boosters, Examples) {
  auto p5 = path_graph(5);
  auto b = boosters_exact(p5);
  EXPECT_TRUE(b.contains(0, 4));
  EXPECT_EQ(b.pairs.size(), 1u);
  auto w = boosters_witnessed(p5);
  EXPECT_EQ(w.pairs, b.pairs);
  // Hamiltonian host: every non-edge qualifies
  auto c6 = cycle_graph(6);
  EXPECT_EQ(boosters_exact(c6).pairs.size(), 15u - 6u);
  EXPECT_TRUE(boosters_exact(c6).host_hamiltonian);
}

TEST(Boosters, WitnessedIsSubsetOfExact) {
  for (int t = 0; t < 150; ++t) {
    int n = 5 + t % 6;
    auto g = gen_binomial(n, 0.2 + 0.04 * (t % 10), 4000 + t);
    auto ex = boosters_exact(g);
    auto wi = boosters_witnessed(g);
    for (auto [u, v] : wi.pairs) {
      ASSERT_TRUE(ex.contains(u, v)) << t << " " << u << "," << v;
    }
    ASSERT_EQ(wi.path_length, ex.path_length);
  }
}

TEST(Boosters, MagnifierLowerBound) {
  // Connected, non-Hamiltonian (k,2)-magnifiers have at least k^2/2 boosters.
  int checked = 0;
  for (int t = 0; t < 400 && checked < 15; ++t) {
    auto g = gen_binomial(9 + t % 2, 0.3, 7000 + t);
    if (!is_connected(g) || is_hamiltonian_exact(g).hamiltonian()) continue;
    int k = 0;
    while (k + 1 <= g.n() && magnifier_check(g, k + 1, 2, CheckMode::Exact).status == Verdict::Certified) ++k;
    if (k == 0) continue;
    ++checked;
    EXPECT_GE(2 * boosters_exact(g).pairs.size(), static_cast<std::size_t>(k * k)) << t;
  }
  EXPECT_GT(checked, 0);
}

TEST(Absorb, Examples) {
  std::vector<Edge> es;
  for (int i = 0; i < 4; ++i) es.emplace_back(i, (i + 1) % 4);
  for (int i = 0; i < 4; ++i) es.emplace_back(4 + i, 4 + (i + 1) % 4);
  Graph two_c4(8, es);
  auto r = absorb_boosters(two_c4, complete_graph(8), Graph(8));
  EXPECT_TRUE(r.success);
  EXPECT_TRUE(is_hamilton_cycle(graph_union(two_c4, Graph(8, r.added)), r.cycle));
  EXPECT_LE(r.added.size(), 2u);

  auto p8 = path_graph(8);
  auto one = absorb_boosters(p8, Graph(8, {{0, 7}}), Graph(8));
  EXPECT_TRUE(one.success);
  EXPECT_EQ(one.added, (std::vector<Edge>{{0, 7}}));
  auto none = absorb_boosters(p8, Graph(8, {{0, 7}}), Graph(8, {{0, 7}}));
  EXPECT_FALSE(none.success);
  EXPECT_FALSE(none.trace.empty());
}

TEST(Absorb, WitnessedBoostersOnLargerGraphs) {
  auto g0 = gen_regular(60, 3, 5);
  auto pool = complete_graph(60);
  std::vector<Edge> es = g0.edges();
  es.resize(es.size() - 10);
  auto r = absorb_boosters(Graph(60, es), pool, Graph(60));
  EXPECT_TRUE(r.success);
}

TEST(Expansion, ExactExamples) {
  auto k10 = complete_graph(10);
  auto e = expander_check(k10, 0.15, CheckMode::Exact);
  EXPECT_EQ(e.status, Verdict::Refuted);  // |V0| = 1 < eps n would need 10 neighbours
  EXPECT_EQ(e.clause, "Q1");
  auto c = expander_check(cycle_graph(12), 0.04, CheckMode::Exact);
  EXPECT_TRUE(c.vacuous);
  auto m = magnifier_check(k10, 3, 2, CheckMode::Exact);
  EXPECT_EQ(m.status, Verdict::Certified);
  auto mc = magnifier_check(cycle_graph(10), 1, 2, CheckMode::Exact);
  EXPECT_EQ(mc.status, Verdict::Certified);
  auto mc2 = magnifier_check(cycle_graph(10), 2, 2, CheckMode::Exact);
  EXPECT_EQ(mc2.status, Verdict::Refuted);
  EXPECT_EQ(mc2.witness.size(), 2u);
}

TEST(Expansion, HeuristicRefutesAndCertifies) {
  auto g = gen_regular(200, 3, 2);
  auto m = magnifier_check(g, 10, 2, CheckMode::Heuristic);
  EXPECT_EQ(m.status, Verdict::Refuted);
  EXPECT_LT(static_cast<double>(neighborhood(g, m.witness).size()), 2.0 * m.witness.size());
  auto k = complete_graph(300);
  auto ok = magnifier_check(k, 20, 2, CheckMode::Heuristic);
  EXPECT_EQ(ok.status, Verdict::Certified);
  EXPECT_EQ(ok.method, "spectral (Tanner bound)");
}
