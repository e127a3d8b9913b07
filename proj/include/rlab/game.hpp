#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "graph.hpp"
#include "posa.hpp"
#include "random_models.hpp"
#include "resilience_ham.hpp"
#include "rng.hpp"

namespace rlab {

enum class Player { Maker, Breaker };

inline const char* to_string(Player p) { return p == Player::Maker ? "maker" : "breaker"; }

struct Move {
  Player player;
  int u, v;
  std::string phase;
};

class GameState {
 public:
  explicit GameState(Graph board) : board_(std::move(board)), edges_(board_.edges()) {
    owner_.assign(edges_.size(), 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) index_.emplace(edge_key(edges_[i].first, edges_[i].second), static_cast<int>(i));
    const auto n = static_cast<std::size_t>(board_.n());
    maker_deg_.assign(n, 0);
    breaker_deg_.assign(n, 0);
    free_deg_.resize(n);
    for (int v = 0; v < board_.n(); ++v) free_deg_[v] = board_.degree(v);
    maker_adj_.assign(n, {});
    unclaimed_ = static_cast<long>(edges_.size());
  }

  const Graph& board() const { return board_; }
  int n() const { return board_.n(); }
  /// 0 unclaimed, 1 maker, 2 breaker, -1 not a board edge.
  int owner(int u, int v) const {
    auto it = index_.find(edge_key(u, v));
    return it == index_.end() ? -1 : owner_[it->second];
  }
  bool unclaimed(int u, int v) const { return owner(u, v) == 0; }
  long unclaimed_count() const { return unclaimed_; }
  int maker_degree(int v) const { return maker_deg_[v]; }
  int breaker_degree(int v) const { return breaker_deg_[v]; }
  int free_degree(int v) const { return free_deg_[v]; }
  const std::vector<int>& maker_neighbors(int v) const { return maker_adj_[v]; }
  const std::vector<Edge>& maker_edges() const { return maker_; }
  const std::vector<Edge>& breaker_edges() const { return breaker_; }
  const std::vector<Move>& moves() const { return moves_; }
  int turn() const { return static_cast<int>(moves_.size()); }
  Player to_move() const { return moves_.size() % 2 == 0 ? Player::Breaker : Player::Maker; }

  std::vector<Edge> unclaimed_edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (!owner_[i]) out.push_back(edges_[i]);
    return out;
  }
  Graph maker_graph() const { return Graph(board_.n(), maker_); }

  /// Claims {u, v} for p; throws on an illegal move.
  void claim(Player p, int u, int v, std::string phase = {}) {
    auto it = index_.find(edge_key(u, v));
    if (it == index_.end()) throw ValidationError("edge " + std::to_string(u) + "-" + std::to_string(v) + " is not on the board");
    if (owner_[it->second]) throw ValidationError("edge " + std::to_string(u) + "-" + std::to_string(v) + " already claimed");
    if (p != to_move()) throw ValidationError("out of turn");
    owner_[it->second] = p == Player::Maker ? 1 : 2;
    --free_deg_[u], --free_deg_[v], --unclaimed_;
    if (p == Player::Maker) {
      ++maker_deg_[u], ++maker_deg_[v];
      maker_adj_[u].push_back(v);
      maker_adj_[v].push_back(u);
      maker_.push_back(canon(u, v));
    } else {
      ++breaker_deg_[u], ++breaker_deg_[v];
      breaker_.push_back(canon(u, v));
    }
    moves_.push_back({p, std::min(u, v), std::max(u, v), std::move(phase)});
  }

 private:
  Graph board_;
  std::vector<Edge> edges_;
  std::vector<int> owner_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<int> maker_deg_, breaker_deg_, free_deg_;
  std::vector<std::vector<int>> maker_adj_;
  std::vector<Edge> maker_, breaker_;
  std::vector<Move> moves_;
  long unclaimed_ = 0;
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  /// Next claim, given the opponent's last claim. Nothing means the strategy is stuck.
  virtual std::optional<Edge> move(const GameState& s, const std::optional<Edge>& last) = 0;
  /// Phase tag for the move just returned.
  virtual std::string phase() const { return {}; }
  /// A Hamilton cycle the strategy claims to own, if it tracks one.
  virtual std::vector<int> claimed_cycle() const { return {}; }
  virtual bool tracks_cycle() const { return false; }
  virtual std::string failure() const { return {}; }
};

// --- decomposition ----------------------------------------------------------------

/// C1, C2 Hamilton cycles, G12 and G2; together they partition the board.
struct Decomposition {
  Graph c1, c2, g12, g2;

  static Decomposition from(const BoardSample& b) { return {b.cycles.c1, b.cycles.c2, b.g12, b.g2}; }

  void validate(const Graph& board) const {
    const int n = board.n();
    for (const Graph* g : {&c1, &c2, &g12, &g2})
      if (g->n() != n) throw ValidationError("decomposition part has the wrong vertex count");
    if (c1.regular_degree() != 2 || !is_connected(c1) || c2.regular_degree() != 2 || !is_connected(c2))
      throw ValidationError("C1 and C2 must be Hamilton cycles");
    std::size_t total = c1.m() + c2.m() + g12.m() + g2.m();
    if (total != board.m()) throw ValidationError("decomposition does not partition the board edges");
    EdgeSet seen;
    for (const Graph* g : {&c1, &c2, &g12, &g2})
      for (auto [u, v] : g->edges()) {
        if (!board.has_edge(u, v)) throw ValidationError("decomposition edge missing from the board");
        if (!seen.insert(edge_key(u, v)).second) throw ValidationError("decomposition parts overlap");
      }
  }
};

// --- Lehman connectivity pairing --------------------------------------------------

/// Two spanning trees whose unclaimed edges are disjoint and whose maker edges are shared.
/// A Breaker claim inside T_i is answered by an edge of T_{3-i} across the cut it opens.
class LehmanConnectivity {
 public:
  LehmanConnectivity() = default;
  LehmanConnectivity(int n, const std::vector<Edge>& t1, const std::vector<Edge>& t2)
      : n_(n), adj_{std::vector<std::vector<int>>(static_cast<std::size_t>(n)),
                    std::vector<std::vector<int>>(static_cast<std::size_t>(n))},
        parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
    comps_ = n;
    for (int i = 0; i < 2; ++i)
      for (auto [u, v] : i ? t2 : t1) add(i, u, v);
    for (int i = 0; i < 2; ++i)
      if (count_[i] != n - 1) throw ValidationError("tree does not have n-1 edges");
  }

  bool done() const { return comps_ == 1; }
  bool in_tree(int i, int u, int v) const { return keys_[i].count(edge_key(u, v)) > 0; }

  /// Maker's answer after Breaker claimed e (already recorded in s).
  std::optional<Edge> respond(const GameState& s, const Edge& e) {
    for (int i = 0; i < 2; ++i)
      if (in_tree(i, e.first, e.second)) {
        remove(i, e.first, e.second);
        auto side = reach(i, e.first);
        int j = 1 - i;
        std::optional<Edge> f;
        for (int u = 0; u < n_ && !f; ++u)
          if (side[u])
            for (int w : adj_[j][u])
              if (!side[w] && s.unclaimed(u, w)) {
                f = canon(u, w);
                break;
              }
        if (!f) throw RuntimeFailure("Lehman invariant broken: no crossing edge");
        add(i, f->first, f->second);
        unite(f->first, f->second);
        return f;
      }
    return free_move(s);
  }

  /// Claims an unclaimed tree edge joining two maker components and moves it into both trees.
  std::optional<Edge> free_move(const GameState& s) {
    for (int i = 0; i < 2; ++i)
      for (int u = 0; u < n_; ++u)
        for (int w : adj_[i][u]) {
          if (u > w || !s.unclaimed(u, w) || find(u) == find(w)) continue;
          int j = 1 - i;
          // make room in T_j: drop an unclaimed edge on its u-w path
          auto path = tree_path(j, u, w);
          for (std::size_t k = 0; k + 1 < path.size(); ++k) {
            int a = path[k], b = path[k + 1];
            if (s.unclaimed(a, b)) {
              remove(j, a, b);
              add(j, u, w);
              unite(u, w);
              return canon(u, w);
            }
          }
          throw RuntimeFailure("Lehman invariant broken: tree path fully owned");
        }
    return std::nullopt;
  }

  std::vector<Edge> tree(int i) const {
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u)
      for (int w : adj_[i][u])
        if (u < w) out.emplace_back(u, w);
    return out;
  }

 private:
  void add(int i, int u, int v) {
    adj_[i][u].push_back(v);
    adj_[i][v].push_back(u);
    keys_[i].insert(edge_key(u, v));
    ++count_[i];
  }
  void remove(int i, int u, int v) {
    auto drop = [](std::vector<int>& a, int x) { a.erase(std::find(a.begin(), a.end(), x)); };
    drop(adj_[i][u], v);
    drop(adj_[i][v], u);
    keys_[i].erase(edge_key(u, v));
    --count_[i];
  }
  std::vector<char> reach(int i, int from) const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> q{from};
    seen[from] = 1;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (int w : adj_[i][q[h]])
        if (!seen[w]) seen[w] = 1, q.push_back(w);
    return seen;
  }
  std::vector<int> tree_path(int i, int a, int b) const {
    std::vector<int> par(static_cast<std::size_t>(n_), -1);
    std::vector<int> q{a};
    par[a] = a;
    for (std::size_t h = 0; h < q.size() && par[b] < 0; ++h)
      for (int w : adj_[i][q[h]])
        if (par[w] < 0) par[w] = q[h], q.push_back(w);
    std::vector<int> path{b};
    while (path.back() != a) path.push_back(par[path.back()]);
    return path;
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent_[a] = b, --comps_;
  }

  int n_ = 0;
  std::vector<std::vector<int>> adj_[2];
  EdgeSet keys_[2];
  int count_[2] = {0, 0};
  std::vector<int> parent_;
  int comps_ = 0;
};

// --- degree game -------------------------------------------------------------------

/// Danger-greedy Maker for the minimum-degree game inside a subgraph.
class DegreeGame {
 public:
  DegreeGame() = default;
  DegreeGame(const Graph& part, int k) : part_(part), k_(k) {}

  int k() const { return k_; }
  bool done(const GameState& s) const {
    for (int v = 0; v < part_.n(); ++v)
      if (own(s, v) < k_) return false;
    return true;
  }
  int own(const GameState& s, int v) const {
    int c = 0;
    for (int w : part_.neighbors(v)) c += s.owner(v, w) == 1;
    return c;
  }

  /// Claim at the most endangered deficient vertex; sets `stuck` when one has no free edge.
  std::optional<Edge> respond(const GameState& s, std::string* stuck = nullptr) const {
    int best = -1, best_danger = 0;
    for (int v = 0; v < part_.n(); ++v) {
      int mine = 0, theirs = 0, free = 0;
      for (int w : part_.neighbors(v)) {
        int o = s.owner(v, w);
        mine += o == 1, theirs += o == 2, free += o == 0;
      }
      if (mine >= k_) continue;
      if (free == 0) {
        if (stuck) *stuck = "degree game stuck at vertex " + std::to_string(v);
        return std::nullopt;
      }
      int danger = theirs - 2 * mine;
      if (best < 0 || danger > best_danger) best = v, best_danger = danger;
    }
    if (best < 0) return std::nullopt;
    int pick = -1, pick_score = 0;
    for (int w : part_.neighbors(best)) {
      if (!s.unclaimed(best, w)) continue;
      int mine = own(s, w);
      int score = (mine < k_ ? 1000 : 0) + (s.breaker_degree(w) - 2 * mine);
      if (pick < 0 || score > pick_score) pick = w, pick_score = score;
    }
    return canon(best, pick);
  }

 private:
  Graph part_;
  int k_ = 0;
};

// --- booster play ------------------------------------------------------------------

/// Tracks a maximal path of the maker graph and grows it by claiming witnessed boosters
/// from a pool.
class BoosterPlay {
 public:
  explicit BoosterPlay(std::uint64_t seed = 1) : seed_(seed) {}

  const std::vector<int>& path() const { return path_; }
  const std::vector<int>& cycle() const { return cycle_; }
  long long booster_claims() const { return boosters_; }
  long long fallback_claims() const { return fallbacks_; }
  long long length_failures() const { return failures_; }

  /// Refresh the path after the maker graph grew.
  void sync(const GameState& s) {
    Graph m = s.maker_graph();
    if (path_.empty()) {
      std::vector<int> cyc;
      path_ = posa_search(m, 3, seed_, &cyc).path;
      if (!cyc.empty() && is_hamilton_cycle(m, cyc)) cycle_ = cyc;
    }
    path_ = extend_maximal(m, path_);
    close_if_possible(m);
  }

  /// Claims an unclaimed pool booster; falls back to the pool edge with most endpoints in the
  /// rotation closure.
  std::optional<Edge> choose(const GameState& s, const Graph& pool, bool* was_booster) {
    Graph m = s.maker_graph();
    sync(s);
    *was_booster = false;
    for (bool full : {false, true}) {
      auto b = boosters_from_path(m, path_, full);
      // most urgent first: an endpoint that is short of maker degree 2 with few free edges left
      auto urgency = [&](int x) { return s.maker_degree(x) >= 2 ? s.n() : s.maker_degree(x) + s.free_degree(x); };
      std::optional<Edge> best;
      int best_u = 0;
      for (auto [u, v] : b.pairs)
        if (pool.has_edge(u, v) && s.unclaimed(u, v)) {
          int score = std::min(urgency(u), urgency(v));
          if (!best || score < best_u) best = Edge(u, v), best_u = score;
        }
      if (best) {
        *was_booster = true;
        if (s.n() <= kExactBoosterLimit) exact_before_ = static_cast<int>(longest_path_exact(m).size());
        return best;
      }
      if (path_.size() > 60) break;  // the full closure is quadratic in |S|; one level suffices at scale
    }
    auto cl = detail::closure_of(m, path_);
    std::vector<char> end(static_cast<std::size_t>(s.n()), 0);
    for (int x : cl.endpoints) end[x] = 1;
    end[path_.front()] = 1;
    std::optional<Edge> any;
    int any_score = -1;
    for (auto [u, v] : pool.edges()) {
      if (!s.unclaimed(u, v)) continue;
      int score = end[u] + end[v];
      if (score > any_score) any = Edge(u, v), any_score = score;
      if (score == 2) break;
    }
    return any;
  }

  /// Called after the maker's claim of the edge returned by choose().
  void after_claim(const GameState& s, const Edge& e, bool was_booster) {
    Graph m = s.maker_graph();
    if (was_booster) {
      ++boosters_;
      bool cyc = false;
      const int before = static_cast<int>(path_.size());
      auto next = apply_booster(m, path_, e.first, e.second, &cyc);
      if (cyc) {
        cycle_ = next;
      } else if (static_cast<int>(next.size()) == before + 1) {
        path_ = next;
      } else {
        ++failures_;
      }
      if (exact_before_ >= 0) {
        // tiny boards: confirm the gain against the exact longest path
        const bool ham = is_hamiltonian_exact(m).hamiltonian();
        if (!ham && static_cast<int>(longest_path_exact(m).size()) <= exact_before_) ++failures_;
        exact_before_ = -1;
      }
    } else {
      ++fallbacks_;
    }
    path_ = extend_maximal(m, path_);
    close_if_possible(m);
  }

 private:
  void close_if_possible(const Graph& m) {
    if (cycle_.empty() && static_cast<int>(path_.size()) == m.n() && m.n() >= 3 && m.has_edge(path_.front(), path_.back()))
      cycle_ = path_;
  }

  std::uint64_t seed_;
  std::vector<int> path_, cycle_;
  long long boosters_ = 0, fallbacks_ = 0, failures_ = 0;
  int exact_before_ = -1;
};

// --- makers ------------------------------------------------------------------------

/// Maker strategy of the two-phase proof: Lehman pairing on C1 + C2 and the degree game on
/// G12 in parallel, then booster absorption from G2.
class ThreePhaseMaker : public Strategy {
 public:
  struct Stats {
    long long conn_moves = 0, degree_moves = 0, booster_moves = 0, fallback_moves = 0, length_failures = 0;
    int k = 0;
    bool conn_done_before_phase2 = false, degree_done_before_phase2 = false;
  };

  ThreePhaseMaker(const Graph& board, const Decomposition& d, int d1, std::uint64_t seed)
      : decomp_(d), booster_(seed) {
    d.validate(board);
    const int n = board.n();
    auto tree_of = [](const Graph& c) {
      auto es = c.edges();
      // drop one cycle edge: any edge leaves a Hamilton path
      es.erase(es.begin());
      return es;
    };
    conn_ = LehmanConnectivity(n, tree_of(d.c1), tree_of(d.c2));
    conn_part_ = graph_union(d.c1, d.c2);
    stats_.k = std::max(0, (d1 - 4 + 4) / 5);
    degree_ = DegreeGame(d.g12, stats_.k);
  }

  std::string name() const override { return "three-phase"; }
  std::string phase() const override { return phase_; }
  bool tracks_cycle() const override { return true; }
  std::vector<int> claimed_cycle() const override { return booster_.cycle(); }
  std::string failure() const override { return failure_; }
  const Stats& stats() const {
    stats_.booster_moves = booster_.booster_claims();
    stats_.fallback_moves = booster_.fallback_claims();
    stats_.length_failures = booster_.length_failures();
    return stats_;
  }
  const LehmanConnectivity& connectivity() const { return conn_; }

  /// Maker edges inside C1 + C2 span a connected graph and every vertex has k maker edges in G12.
  bool phase1_holds(const GameState& s) const {
    std::vector<Edge> conn;
    for (auto [u, v] : s.maker_edges())
      if (conn_part_.has_edge(u, v)) conn.emplace_back(u, v);
    return is_connected(Graph(s.n(), conn)) && degree_.done(s);
  }

  std::optional<Edge> move(const GameState& s, const std::optional<Edge>& last) override {
    const bool conn_open = !conn_.done();
    const bool deg_open = !degree_.done(s);
    std::optional<Edge> e;
    if (last && conn_open && conn_part_.has_edge(last->first, last->second)) {
      e = conn_.respond(s, *last);
      if (e) return tag(e, "connectivity");
    }
    if (last && deg_open && decomp_.g12.has_edge(last->first, last->second)) {
      e = degree_.respond(s, &failure_);
      if (!failure_.empty()) return std::nullopt;
      if (e) return tag(e, "degree");
    }
    if (conn_open) {
      e = conn_.free_move(s);
      if (e) return tag(e, "connectivity");
    }
    if (deg_open) {
      e = degree_.respond(s, &failure_);
      if (!failure_.empty()) return std::nullopt;
      if (e) return tag(e, "degree");
    }
    if (!phase2_) {
      phase2_ = true;
      stats_.conn_done_before_phase2 = conn_.done();
      stats_.degree_done_before_phase2 = degree_.done(s);
    }
    bool was_booster = false;
    e = booster_.choose(s, decomp_.g2, &was_booster);
    if (!e) {
      // G2 exhausted: any unclaimed edge keeps the game legal
      auto free = s.unclaimed_edges();
      if (free.empty()) return std::nullopt;
      e = free.front();
    }
    last_booster_ = was_booster;
    pending_ = e;
    return tag(e, was_booster ? "booster" : "booster-fallback");
  }

  /// Lets the booster tracker see the maker's own claim.
  void observe_own(const GameState& s) {
    if (pending_) {
      booster_.after_claim(s, *pending_, last_booster_);
      pending_.reset();
    }
  }

 private:
  std::optional<Edge> tag(std::optional<Edge> e, const char* p) {
    phase_ = p;
    if (phase_ == "connectivity") ++stats_.conn_moves;
    if (phase_ == "degree") ++stats_.degree_moves;
    return e;
  }

  Decomposition decomp_;
  LehmanConnectivity conn_;
  Graph conn_part_;
  DegreeGame degree_;
  BoosterPlay booster_;
  mutable Stats stats_;
  std::string phase_, failure_;
  bool phase2_ = false, last_booster_ = false;
  std::optional<Edge> pending_;
};

/// Claims witnessed boosters of its own graph from the whole board.
class GreedyBoosterMaker : public Strategy {
 public:
  explicit GreedyBoosterMaker(std::uint64_t seed) : play_(seed) {}
  std::string name() const override { return "greedy-booster"; }
  bool tracks_cycle() const override { return true; }
  std::vector<int> claimed_cycle() const override { return play_.cycle(); }
  std::optional<Edge> move(const GameState& s, const std::optional<Edge>&) override {
    bool b = false;
    auto e = play_.choose(s, s.board(), &b);
    pending_ = e, was_ = b;
    return e;
  }
  void observe_own(const GameState& s) {
    if (pending_) play_.after_claim(s, *pending_, was_), pending_.reset();
  }

 private:
  BoosterPlay play_;
  std::optional<Edge> pending_;
  bool was_ = false;
};

// --- breakers ----------------------------------------------------------------------

class RandomBreaker : public Strategy {
 public:
  explicit RandomBreaker(std::uint64_t seed) : rng_(stream(seed, "breaker-random")) {}
  std::string name() const override { return "random"; }
  std::optional<Edge> move(const GameState& s, const std::optional<Edge>&) override {
    auto free = s.unclaimed_edges();
    if (free.empty()) return std::nullopt;
    return free[uniform_int(rng_, 0, static_cast<int>(free.size()) - 1)];
  }

 private:
  Rng rng_;
};

namespace detail {

/// Edge at the vertex closest to losing its last two possible maker edges.
inline std::optional<Edge> killer_move(const GameState& s) {
  int best = -1, best_slack = 0;
  for (int v = 0; v < s.n(); ++v) {
    if (s.free_degree(v) == 0 || s.maker_degree(v) >= 2) continue;
    int slack = s.maker_degree(v) + s.free_degree(v) - 2;
    if (best < 0 || slack < best_slack) best = v, best_slack = slack;
  }
  if (best < 0) {
    for (int v = 0; v < s.n(); ++v) {
      if (s.free_degree(v) == 0) continue;
      int pot = s.maker_degree(v) + s.free_degree(v);
      if (best < 0 || pot < best_slack) best = v, best_slack = pot;
    }
  }
  if (best < 0) return std::nullopt;
  for (int w : s.board().neighbors(best))
    if (s.unclaimed(best, w)) return canon(best, w);
  return std::nullopt;
}

}  // namespace detail

class VertexKillerBreaker : public Strategy {
 public:
  std::string name() const override { return "vertex-killer"; }
  std::optional<Edge> move(const GameState& s, const std::optional<Edge>&) override { return detail::killer_move(s); }
};

/// Claims boosters of the maker graph relative to a tracked maximal path.
class BoosterBlockerBreaker : public Strategy {
 public:
  std::string name() const override { return "booster-blocker"; }
  std::optional<Edge> move(const GameState& s, const std::optional<Edge>& last) override {
    Graph m = s.maker_graph();
    if (path_.empty()) path_ = {0};
    if (last && prev_.count(edge_key(last->first, last->second))) {
      auto next = apply_booster(m, path_, last->first, last->second);
      if (!next.empty()) path_ = next;
    }
    path_ = extend_maximal(m, path_);
    auto b = boosters_from_path(m, path_, false);
    prev_.clear();
    for (auto [u, v] : b.pairs) prev_.insert(edge_key(u, v));
    for (auto [u, v] : b.pairs)
      if (s.unclaimed(u, v)) return Edge(u, v);
    return detail::killer_move(s);
  }

 private:
  std::vector<int> path_;
  EdgeSet prev_;
};

/// Grows a set S from a minimum-degree vertex and claims the free edges leaving it;
/// S absorbs the far end of any maker edge that crosses.
class CutBuilderBreaker : public Strategy {
 public:
  std::string name() const override { return "cut-builder"; }
  std::optional<Edge> move(const GameState& s, const std::optional<Edge>&) override {
    const int n = s.n();
    if (in_.empty()) {
      in_.assign(static_cast<std::size_t>(n), 0);
      int v0 = 0;
      for (int v = 1; v < n; ++v)
        if (s.board().degree(v) < s.board().degree(v0)) v0 = v;
      in_[v0] = 1;
    }
    for (int guard = 0; guard <= n; ++guard) {
      std::optional<Edge> free_cross;
      int grow = -1, grow_free = 0;
      for (int u = 0; u < n; ++u) {
        if (!in_[u]) continue;
        for (int w : s.board().neighbors(u)) {
          if (in_[w]) continue;
          int o = s.owner(u, w);
          if (o == 0 && !free_cross) free_cross = canon(u, w);
          if (o == 1 && (grow < 0 || s.free_degree(w) < grow_free)) grow = w, grow_free = s.free_degree(w);
        }
      }
      if (free_cross) return free_cross;
      if (grow < 0) break;
      in_[grow] = 1;
    }
    auto free = s.unclaimed_edges();
    if (free.empty()) return std::nullopt;
    return free.front();
  }

 private:
  std::vector<char> in_;
};

inline std::unique_ptr<Strategy> make_breaker(const std::string& name, std::uint64_t seed) {
  if (name == "random") return std::make_unique<RandomBreaker>(seed);
  if (name == "vertex-killer") return std::make_unique<VertexKillerBreaker>();
  if (name == "booster-blocker") return std::make_unique<BoosterBlockerBreaker>();
  if (name == "cut-builder") return std::make_unique<CutBuilderBreaker>();
  throw ValidationError("unknown breaker '" + name + "'");
}

inline const std::vector<std::string>& breaker_names() {
  static const std::vector<std::string> names{"random", "vertex-killer", "booster-blocker", "cut-builder"};
  return names;
}

// --- play --------------------------------------------------------------------------

struct GameOptions {
  bool early_stop = true;     ///< stop at a Maker cycle or a vertex Maker can no longer cover twice
  int final_restarts = kHamRestarts;
};

struct GameResult {
  std::vector<Move> moves;
  Player winner = Player::Breaker;
  std::vector<int> cycle;   ///< verified Hamilton cycle inside maker edges on a Maker win
  std::string reason;
  bool verified = true;     ///< false when a Breaker win rests on an unsuccessful search
  std::string illegal;      ///< diagnostic for an illegal move
};

inline bool cycle_in_edges(const GameState& s, const std::vector<int>& cyc) {
  if (static_cast<int>(cyc.size()) != s.n() || s.n() < 3) return false;
  std::vector<char> seen(static_cast<std::size_t>(s.n()), 0);
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
    if (a < 0 || a >= s.n() || seen[a]) return false;
    seen[a] = 1;
    if (s.owner(a, b) != 1) return false;
  }
  return true;
}

namespace detail {

inline void observe(Strategy& st, const GameState& s) {
  if (auto* t = dynamic_cast<ThreePhaseMaker*>(&st)) t->observe_own(s);
  if (auto* g = dynamic_cast<GreedyBoosterMaker*>(&st)) g->observe_own(s);
}

}  // namespace detail

/// Breaker moves first. A Maker win is declared only with a Hamilton cycle in maker edges.
inline GameResult play(const Graph& board, Strategy& maker, Strategy& breaker, const GameOptions& opt = {},
                       std::uint64_t seed = 1) {
  GameState s(board);
  GameResult r;
  std::optional<Edge> last;
  auto finish = [&](Player w, std::string why) {
    r.winner = w;
    r.reason = std::move(why);
    r.moves = s.moves();
    return r;
  };
  while (s.unclaimed_count() > 0) {
    const Player p = s.to_move();
    Strategy& st = p == Player::Maker ? maker : breaker;
    auto e = st.move(s, last);
    if (!e) {
      if (p == Player::Maker) return finish(Player::Breaker, "maker strategy failure: " + (st.failure().empty() ? std::string("no move") : st.failure()));
      return finish(Player::Maker, "breaker strategy produced no move");
    }
    try {
      s.claim(p, e->first, e->second, st.phase());
    } catch (const ValidationError& ex) {
      r.illegal = std::string(to_string(p)) + ": " + ex.what();
      return finish(p == Player::Maker ? Player::Breaker : Player::Maker, "illegal move");
    }
    last = canon(e->first, e->second);
    if (p == Player::Maker) {
      detail::observe(st, s);
      if (opt.early_stop) {
        std::vector<int> cyc = st.claimed_cycle();
        if (cyc.empty() && !st.tracks_cycle() && s.maker_degree(e->first) >= 2 && s.maker_degree(e->second) >= 2) {
          Graph m = s.maker_graph();
          if (m.min_degree() >= 2 && is_connected(m)) posa_search(m, 2, derive_seed(seed, "game-check"), &cyc);
        }
        if (!cyc.empty() && cycle_in_edges(s, cyc)) {
          r.cycle = cyc;
          return finish(Player::Maker, "hamilton cycle");
        }
      }
    } else if (opt.early_stop) {
      for (int v : {e->first, e->second})
        if (s.maker_degree(v) + s.free_degree(v) < 2)
          return finish(Player::Breaker, "vertex " + std::to_string(v) + " cannot reach maker degree 2");
    }
  }
  Graph m = s.maker_graph();
  std::vector<int> cyc = maker.claimed_cycle();
  if (!cyc.empty() && cycle_in_edges(s, cyc)) {
    r.cycle = cyc;
    return finish(Player::Maker, "hamilton cycle");
  }
  if (m.n() <= kExactHamiltonLimit) {
    auto h = is_hamiltonian_exact(m);
    if (h.hamiltonian()) {
      r.cycle = h.cycle;
      return finish(Player::Maker, "hamilton cycle");
    }
    return finish(Player::Breaker, "maker graph not hamiltonian (" + h.proof + ")");
  }
  auto c = check_hamiltonicity(m, derive_seed(seed, "game-final"), opt.final_restarts);
  if (c.alive) {
    posa_search(m, opt.final_restarts, derive_seed(seed, "game-final"), &cyc);
    if (cycle_in_edges(s, cyc)) {
      r.cycle = cyc;
      return finish(Player::Maker, "hamilton cycle");
    }
  }
  r.verified = c.verified;
  return finish(Player::Breaker, "maker graph not hamiltonian (" + c.decider + ")");
}

/// Re-applies a transcript; throws on the first illegal or out-of-turn move.
inline GameState replay(const Graph& board, const std::vector<Move>& moves) {
  GameState s(board);
  for (const auto& m : moves) {
    if (m.player != s.to_move()) throw ValidationError("alternation broken at move " + std::to_string(s.turn()));
    s.claim(m.player, m.u, m.v, m.phase);
  }
  return s;
}

inline nlohmann::json transcript_json(const GameResult& r, const std::string& maker, const std::string& breaker) {
  nlohmann::json moves = nlohmann::json::array();
  for (const auto& m : r.moves) moves.push_back({{"player", to_string(m.player)}, {"u", m.u}, {"v", m.v}, {"phase", m.phase}});
  return {{"maker", maker},          {"breaker", breaker}, {"winner", to_string(r.winner)},
          {"reason", r.reason},      {"verified", r.verified}, {"cycle", r.cycle},
          {"illegal", r.illegal},    {"moves", moves}};
}

// --- exhaustive checks ---------------------------------------------------------------

/// Every Breaker line against the Lehman pairing on the union of two edge-disjoint
/// spanning trees; true if Maker ends connected in all of them. `leaves` counts lines.
inline bool lehman_wins_all_lines(const std::vector<Edge>& t1, const std::vector<Edge>& t2, int n, long long* leaves = nullptr) {
  std::vector<Edge> all = t1;
  all.insert(all.end(), t2.begin(), t2.end());
  Graph board(n, all);
  long long count = 0;
  auto rec = [&](auto&& self, const GameState& s, const LehmanConnectivity& strat) -> bool {
    if (strat.done()) {
      ++count;
      return true;
    }
    auto free = s.unclaimed_edges();
    if (free.empty()) {
      ++count;
      return is_connected(Graph(n, s.maker_edges()));
    }
    for (auto e : free) {
      GameState next = s;
      next.claim(Player::Breaker, e.first, e.second);
      LehmanConnectivity st = strat;
      std::optional<Edge> f;
      try {
        f = st.respond(next, e);
      } catch (const RuntimeFailure&) {
        return false;
      }
      if (!f) {
        if (!self(self, next, st)) return false;
        continue;
      }
      if (next.to_move() != Player::Maker) return false;
      next.claim(Player::Maker, f->first, f->second);
      if (!self(self, next, st)) return false;
    }
    return true;
  };
  bool ok = rec(rec, GameState(board), LehmanConnectivity(n, t1, t2));
  if (leaves) *leaves = count;
  return ok;
}

}  // namespace rlab
