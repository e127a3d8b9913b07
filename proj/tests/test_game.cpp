#include <gtest/gtest.h>

#include "rlab/game.hpp"

using namespace rlab;

namespace {

struct Scripted : Strategy {
  std::vector<Edge> script;
  std::size_t at = 0;
  std::string name() const override { return "scripted"; }
  std::optional<Edge> move(const GameState&, const std::optional<Edge>&) override {
    if (at >= script.size()) return std::nullopt;
    return script[at++];
  }
};

bool maker_connected(const GameState& s) { return is_connected(s.maker_graph()); }

}  // namespace

TEST(GameState, ClaimsAndTurnOrder) {
  GameState s(complete_graph(4));
  EXPECT_EQ(s.to_move(), Player::Breaker);
  EXPECT_THROW(s.claim(Player::Maker, 0, 1), ValidationError);
  s.claim(Player::Breaker, 1, 0);
  EXPECT_EQ(s.owner(0, 1), 2);
  EXPECT_THROW(s.claim(Player::Maker, 0, 1), ValidationError);
  EXPECT_THROW(s.claim(Player::Maker, 0, 0), ValidationError);
  s.claim(Player::Maker, 2, 3);
  EXPECT_EQ(s.maker_degree(2), 1);
  EXPECT_EQ(s.free_degree(0), 2);
  EXPECT_EQ(s.unclaimed_count(), 4);
  GameState t(cycle_graph(5));
  EXPECT_THROW(t.claim(Player::Breaker, 0, 2), ValidationError);
}

TEST(Game, IllegalMoveLoses) {
  Scripted maker, breaker;
  breaker.script = {{0, 1}, {1, 2}};
  maker.script = {{0, 1}};
  auto r = play(complete_graph(5), maker, breaker);
  EXPECT_EQ(r.winner, Player::Breaker);
  EXPECT_EQ(r.reason, "illegal move");
  EXPECT_NE(r.illegal.find("already claimed"), std::string::npos);
}

TEST(Game, VertexKillerWinsOnCubicBoard) {
  auto board = gen_regular(20, 3, 4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GreedyBoosterMaker maker(seed);
    VertexKillerBreaker breaker;
    auto r = play(board, maker, breaker, {}, seed);
    EXPECT_EQ(r.winner, Player::Breaker);
    EXPECT_NE(r.reason.find("cannot reach maker degree 2"), std::string::npos) << r.reason;
    EXPECT_LE(r.moves.size(), 4u);
  }
}

TEST(Game, GreedyBoosterOnK5AgainstRandom) {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GreedyBoosterMaker maker(seed);
    RandomBreaker breaker(seed);
    auto r = play(complete_graph(5), maker, breaker, {}, seed);
    auto s = replay(complete_graph(5), r.moves);
    if (r.winner == Player::Maker) {
      ++wins;
      EXPECT_TRUE(cycle_in_edges(s, r.cycle));
    }
  }
  EXPECT_GE(wins, 1);
}

TEST(Lehman, ExhaustiveOnFiveVertices) {
  // C5 and the pentagram are edge-disjoint; drop one edge of each in every combination.
  auto c = cycle_graph(5).edges();
  std::vector<Edge> star;
  for (int i = 0; i < 5; ++i) star.push_back(canon(i, (i + 2) % 5));
  long long lines = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      auto t1 = c, t2 = star;
      t1.erase(t1.begin() + a);
      t2.erase(t2.begin() + b);
      long long leaves = 0;
      ASSERT_TRUE(lehman_wins_all_lines(t1, t2, 5, &leaves)) << a << "," << b;
      lines += leaves;
    }
  EXPECT_GT(lines, 25);
}

TEST(Lehman, RandomBreakerOnTwoCycles) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto two = gen_two_hamilton_cycles(40, seed);
    auto t1 = two.c1.edges(), t2 = two.c2.edges();
    t1.pop_back(), t2.pop_back();
    LehmanConnectivity lc(40, t1, t2);
    GameState s(two.g);
    RandomBreaker br(seed);
    int maker_moves = 0;
    while (s.unclaimed_count() > 0 && !lc.done()) {
      auto e = br.move(s, std::nullopt);
      s.claim(Player::Breaker, e->first, e->second);
      auto f = lc.respond(s, *e);
      if (!f) break;
      s.claim(Player::Maker, f->first, f->second);
      ++maker_moves;
    }
    EXPECT_TRUE(lc.done());
    EXPECT_TRUE(maker_connected(s));
    EXPECT_LE(maker_moves, 39);
  }
}

TEST(DegreeGame, ExhaustiveOnK6WithKOne) {
  // Every Breaker line on K6; Maker answers with the danger rule and must reach degree 1.
  Graph k6 = complete_graph(6);
  DegreeGame dg(k6, 1);
  long long lines = 0;
  auto rec = [&](auto&& self, const GameState& s) -> bool {
    if (dg.done(s)) return ++lines, true;
    auto free = s.unclaimed_edges();
    if (free.empty()) return false;
    for (auto e : free) {
      GameState next = s;
      next.claim(Player::Breaker, e.first, e.second);
      if (dg.done(next)) {
        ++lines;
        continue;
      }
      std::string stuck;
      auto f = dg.respond(next, &stuck);
      if (!f) return false;
      next.claim(Player::Maker, f->first, f->second);
      if (!self(self, next)) return false;
    }
    return true;
  };
  EXPECT_TRUE(rec(rec, GameState(k6)));
  EXPECT_GT(lines, 100);
}

TEST(ThreePhase, BudgetsReplayAndWinAgainstEveryBreaker) {
  auto b = gen_union_strategy(80, 14, 14, 3);
  auto d = Decomposition::from(b);
  d.validate(b.g);
  for (const auto& name : breaker_names()) {
    ThreePhaseMaker maker(b.g, d, 14, 7);
    auto breaker = make_breaker(name, 7);
    auto r = play(b.g, maker, *breaker, {}, 7);
    auto s = replay(b.g, r.moves);
    const auto& st = maker.stats();
    EXPECT_EQ(st.k, 2);
    EXPECT_LE(st.conn_moves, 80) << name;
    EXPECT_LE(st.degree_moves, st.k * 80) << name;
    EXPECT_LE(st.booster_moves, 80) << name;
    EXPECT_EQ(st.length_failures, 0) << name;
    EXPECT_TRUE(r.illegal.empty()) << r.illegal;
    EXPECT_LE(r.moves.size(), b.g.m());
    EXPECT_TRUE(maker.phase1_holds(s)) << name;
    EXPECT_EQ(r.winner, Player::Maker) << name << ": " << r.reason;
    if (r.winner == Player::Maker) {
      EXPECT_TRUE(cycle_in_edges(s, r.cycle));
    }
    for (const auto& m : r.moves) {
      if (m.player == Player::Maker) {
        EXPECT_FALSE(m.phase.empty());
      }
    }
  }
}

TEST(ThreePhase, RejectsBadDecomposition) {
  auto b = gen_union_strategy(40, 8, 6, 1);
  auto d = Decomposition::from(b);
  d.g2 = Graph(40);
  EXPECT_THROW(ThreePhaseMaker(b.g, d, 8, 1), ValidationError);
}

TEST(Transcript, JsonCarriesMovesAndReplays) {
  auto b = gen_union_strategy(30, 10, 6, 2);
  ThreePhaseMaker maker(b.g, Decomposition::from(b), 10, 1);
  RandomBreaker breaker(1);
  auto r = play(b.g, maker, breaker, {}, 1);
  auto j = transcript_json(r, "three-phase", "random");
  ASSERT_EQ(j["moves"].size(), r.moves.size());
  std::vector<Move> back;
  for (const auto& m : j["moves"])
    back.push_back({m["player"] == "maker" ? Player::Maker : Player::Breaker, m["u"], m["v"], m["phase"]});
  EXPECT_NO_THROW(replay(b.g, back));
  EXPECT_EQ(j["winner"], to_string(r.winner));
  std::swap(back[0], back[1]);
  EXPECT_THROW(replay(b.g, back), ValidationError);
}

TEST(DegreeGame, KOneAgainstRandomWithinNMoves) {
  const int n = 30;
  auto board = gen_regular(n, 8, 5);
  DegreeGame dg(board, 1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GameState s(board);
    RandomBreaker br(seed);
    int moves = 0;
    while (!dg.done(s)) {
      auto e = br.move(s, std::nullopt);
      s.claim(Player::Breaker, e->first, e->second);
      std::string stuck;
      auto f = dg.respond(s, &stuck);
      ASSERT_TRUE(stuck.empty()) << stuck;
      if (!f) break;
      s.claim(Player::Maker, f->first, f->second);
      ++moves;
    }
    EXPECT_TRUE(dg.done(s));
    EXPECT_LE(moves, n);
  }
}

TEST(Breakers, RandomIsReproducibleAndBlockerLegal) {
  auto b = gen_union_strategy(40, 8, 8, 4);
  auto run = [&](const std::string& br, std::uint64_t seed) {
    ThreePhaseMaker maker(b.g, Decomposition::from(b), 8, seed);
    auto breaker = make_breaker(br, seed);
    return play(b.g, maker, *breaker, {false, 20}, seed);
  };
  auto x = run("random", 3), y = run("random", 3);
  ASSERT_EQ(x.moves.size(), y.moves.size());
  for (std::size_t i = 0; i < x.moves.size(); ++i) EXPECT_TRUE(x.moves[i].u == y.moves[i].u && x.moves[i].v == y.moves[i].v);
  auto z = run("booster-blocker", 5);
  EXPECT_TRUE(z.illegal.empty());
  EXPECT_EQ(z.moves.size(), b.g.m());  // full-board play claims everything
  EXPECT_THROW(make_breaker("nope", 1), ValidationError);
}

TEST(BoosterPhase, ClosingEdgeWins) {
  // Maker owns the Hamilton path 0..5 of a C6-plus-chords board; the closing edge must be next.
  std::vector<Edge> es = cycle_graph(6).edges();
  std::vector<Edge> chords{{0, 2}, {1, 3}, {2, 4}, {3, 5}, {0, 3}, {1, 4}};
  es.insert(es.end(), chords.begin(), chords.end());
  Graph board(6, es);
  GameState s(board);
  for (int i = 0; i < 5; ++i) {
    s.claim(Player::Breaker, chords[i].first, chords[i].second);
    s.claim(Player::Maker, i, i + 1);
  }
  s.claim(Player::Breaker, 1, 4);
  BoosterPlay bp(1);
  bool booster = false;
  auto e = bp.choose(s, board, &booster);
  ASSERT_TRUE(e.has_value());
  EXPECT_TRUE(booster);
  EXPECT_EQ(*e, Edge(0, 5));
  s.claim(Player::Maker, e->first, e->second);
  bp.after_claim(s, *e, booster);
  EXPECT_TRUE(cycle_in_edges(s, bp.cycle()));
  EXPECT_EQ(bp.length_failures(), 0);
}
