#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"
#include "spectral.hpp"

namespace rlab {

// --- paths and rotations ----------------------------------------------------

/// A path (v0, ..., vt) with v0 fixed, plus the log of rotations applied to it.
struct PosaState {
  struct Rotation {
    Edge broken;  ///< {vi, vi+1}, leaves the path
    Edge used;    ///< {vt, vi}, enters the path
  };
  std::vector<int> path;
  std::vector<Rotation> log;

  int length() const { return path.empty() ? 0 : static_cast<int>(path.size()) - 1; }
  int start() const { return path.front(); }
  int end() const { return path.back(); }
};

inline bool is_path_of(const Graph& g, const std::vector<int>& path) {
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  for (std::size_t i = 0; i < path.size(); ++i) {
    int v = path[i];
    if (v < 0 || v >= g.n() || seen[v]) return false;
    seen[v] = 1;
    if (i > 0 && !g.has_edge(path[i - 1], v)) return false;
  }
  return true;
}

inline bool is_hamilton_cycle(const Graph& g, const std::vector<int>& cycle) {
  if (g.n() < 3 || static_cast<int>(cycle.size()) != g.n()) return false;
  return is_path_of(g, cycle) && g.has_edge(cycle.front(), cycle.back());
}

/// Rotation of s along the edge {vt, vi}: (v0..vi, vt, vt-1, ..., vi+1).
inline PosaState elementary_rotation(const Graph& g, const PosaState& s, int vi) {
  const int t = s.length();
  auto it = std::find(s.path.begin(), s.path.end(), vi);
  if (it == s.path.end()) throw ValidationError("pivot not on the path");
  int i = static_cast<int>(it - s.path.begin());
  if (i > t - 2) throw ValidationError("pivot index must be at most t-2");
  if (!g.has_edge(s.end(), vi)) throw ValidationError("rotation edge not incident to the endpoint");
  PosaState r = s;
  r.log.push_back({canon(s.path[i], s.path[i + 1]), canon(s.end(), vi)});
  std::reverse(r.path.begin() + i + 1, r.path.end());
  return r;
}

/// Rotation closure with v0 fixed, computed breadth first.
struct EndpointClosure {
  std::vector<int> endpoints;            ///< reachable endpoints, starting endpoint first
  std::vector<std::vector<int>> paths;   ///< one witness path per endpoint
  std::vector<std::vector<int>> pivots;  ///< rotation pivots replaying each witness
  std::vector<int> layer_sizes;          ///< endpoints first reached after i rotations
  std::vector<int> extendable;           ///< endpoints with a neighbour off the path
};

inline EndpointClosure endpoint_expansion(const Graph& g, const PosaState& s, std::size_t limit = SIZE_MAX,
                                          bool require_maximal = true) {
  if (s.path.empty()) throw ValidationError("empty path");
  const int n = g.n();
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  for (int v : s.path) on[v] = 1;
  auto off_path_neighbor = [&](int x) {
    for (int y : g.neighbors(x))
      if (!on[y]) return true;
    return false;
  };
  if (require_maximal && off_path_neighbor(s.end()))
    throw ValidationError("path is extendable at its endpoint");
  EndpointClosure c;
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  c.endpoints.push_back(s.end());
  c.paths.push_back(s.path);
  c.pivots.emplace_back();
  index[s.end()] = 0;
  c.layer_sizes.push_back(1);
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  std::size_t head = 0, layer_end = 1;
  while (head < c.endpoints.size() && c.endpoints.size() < limit) {
    if (head == layer_end) {
      c.layer_sizes.push_back(static_cast<int>(c.endpoints.size() - layer_end));
      layer_end = c.endpoints.size();
    }
    const std::vector<int> p = c.paths[head];
    const int t = static_cast<int>(p.size()) - 1;
    for (int i = 0; i <= t; ++i) pos[p[i]] = i;
    const int x = p[t];
    for (int y : g.neighbors(x)) {
      int i = on[y] ? pos[y] : -1;
      if (i < 0 || i > t - 2) continue;
      int nx = p[i + 1];
      if (index[nx] >= 0) continue;
      std::vector<int> q = p;
      std::reverse(q.begin() + i + 1, q.end());
      index[nx] = static_cast<int>(c.endpoints.size());
      c.endpoints.push_back(nx);
      c.paths.push_back(std::move(q));
      auto piv = c.pivots[head];
      piv.push_back(y);
      c.pivots.push_back(std::move(piv));
      if (c.endpoints.size() >= limit) break;
    }
    ++head;
  }
  if (c.endpoints.size() > layer_end) c.layer_sizes.push_back(static_cast<int>(c.endpoints.size() - layer_end));
  for (int x : c.endpoints)
    if (off_path_neighbor(x)) c.extendable.push_back(x);
  return c;
}

// --- exact longest paths ------------------------------------------------------

inline constexpr int kExactLongestPathLimit = 20;
inline constexpr int kExactBoosterLimit = 10;
inline constexpr int kExactHamiltonLimit = 30;

/// Longest path by dynamic programming over vertex subsets (n <= 20).
inline std::vector<int> longest_path_exact(const Graph& g) {
  const int n = g.n();
  if (n > kExactLongestPathLimit) throw ValidationError("exact longest path limited to n <= 20");
  if (n == 0) return {};
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) adj[v] |= 1u << w;
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  // ends[mask]: endpoints v of some path covering exactly mask.
  std::vector<std::uint32_t> ends(static_cast<std::size_t>(full) + 1, 0);
  for (int v = 0; v < n; ++v) ends[1u << v] = 1u << v;
  std::uint32_t best = 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t e = ends[mask];
    if (!e) continue;
    if (std::popcount(mask) > std::popcount(best)) best = mask;
    for (std::uint32_t rest = e; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      for (std::uint32_t nb = adj[v] & ~mask; nb; nb &= nb - 1) {
        int w = std::countr_zero(nb);
        ends[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  // Walk back from any endpoint of the best mask.
  std::vector<int> path;
  std::uint32_t mask = best;
  int v = std::countr_zero(ends[mask]);
  while (true) {
    path.push_back(v);
    std::uint32_t prev = mask & ~(1u << v);
    if (!prev) break;
    std::uint32_t cand = ends[prev] & adj[v];
    mask = prev;
    v = std::countr_zero(cand);
  }
  return path;
}

/// Hamilton cycle by subset DP anchored at vertex 0 (n <= 20); empty if none.
inline std::vector<int> hamilton_cycle_dp(const Graph& g) {
  const int n = g.n();
  if (n > kExactLongestPathLimit) throw ValidationError("DP Hamiltonicity limited to n <= 20");
  if (n < 3) return {};
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) adj[v] |= 1u << w;
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> ends(static_cast<std::size_t>(full) + 1, 0);
  ends[1] = 1;
  for (std::uint32_t mask = 1; mask <= full; mask += 2) {
    std::uint32_t e = ends[mask];
    for (std::uint32_t rest = e; rest; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      for (std::uint32_t nb = adj[v] & ~mask; nb; nb &= nb - 1) ends[mask | (nb & -nb)] |= nb & -nb;
    }
  }
  std::uint32_t closing = ends[full] & adj[0];
  if (!closing) return {};
  std::vector<int> cycle;
  std::uint32_t mask = full;
  int v = std::countr_zero(closing);
  while (v != 0) {
    cycle.push_back(v);
    std::uint32_t prev = mask & ~(1u << v);
    mask = prev;
    v = std::countr_zero(ends[prev] & adj[v]);
  }
  cycle.push_back(0);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

// --- Hamiltonicity ------------------------------------------------------------

enum class HamStatus { Hamiltonian, NotHamiltonian, PresumedDead };

inline const char* to_string(HamStatus s) {
  switch (s) {
    case HamStatus::Hamiltonian: return "hamiltonian";
    case HamStatus::NotHamiltonian: return "not-hamiltonian";
    case HamStatus::PresumedDead: return "presumed-dead";
  }
  return "?";
}

struct HamResult {
  HamStatus status = HamStatus::PresumedDead;
  std::vector<int> cycle;  ///< verified Hamilton cycle when status is Hamiltonian
  std::string proof;       ///< reason for absence: structural witness or exhaustive search
  long long nodes = 0;     ///< search nodes explored
  bool hamiltonian() const { return status == HamStatus::Hamiltonian; }
};

/// Cheap certificates of non-Hamiltonicity; empty string if none applies.
inline std::string structural_obstruction(const Graph& g) {
  const int n = g.n();
  if (n < 3) return "fewer than three vertices";
  if (g.min_degree() < 2) return "vertex of degree below two";
  if (!is_connected(g)) return "disconnected";
  // Articulation points (iterative Tarjan).
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
      parent(static_cast<std::size_t>(n), -1), it(static_cast<std::size_t>(n), 0);
  int timer = 0, root_children = 0;
  std::vector<int> stack{0};
  disc[0] = low[0] = timer++;
  while (!stack.empty()) {
    int v = stack.back();
    if (it[v] < g.degree(v)) {
      int w = g.neighbors(v)[it[v]++];
      if (disc[w] < 0) {
        parent[w] = v;
        disc[w] = low[w] = timer++;
        if (v == 0) ++root_children;
        stack.push_back(w);
      } else if (w != parent[v]) {
        low[v] = std::min(low[v], disc[w]);
      }
    } else {
      stack.pop_back();
      int p = parent[v];
      if (p >= 0) {
        low[p] = std::min(low[p], low[v]);
        if (p != 0 && low[v] >= disc[p]) return "cut vertex " + std::to_string(p);
      }
    }
  }
  if (root_children > 1) return "cut vertex 0";
  // Bipartite with unequal sides.
  std::vector<int> col(static_cast<std::size_t>(n), -1);
  col[0] = 0;
  std::vector<int> q{0};
  bool bip = true;
  for (std::size_t h = 0; h < q.size() && bip; ++h)
    for (int w : g.neighbors(q[h])) {
      if (col[w] < 0) {
        col[w] = 1 - col[q[h]];
        q.push_back(w);
      } else if (col[w] == col[q[h]]) {
        bip = false;
      }
    }
  if (bip) {
    int zeros = static_cast<int>(std::count(col.begin(), col.end(), 0));
    if (2 * zeros != n) return "bipartite with unequal sides";
  }
  return {};
}

/// Exact Hamiltonicity by backtracking with degree-2 forcing and connectivity pruning (n <= 30).
inline HamResult is_hamiltonian_exact(const Graph& g) {
  const int n = g.n();
  if (n > kExactHamiltonLimit) throw ValidationError("exact Hamiltonicity limited to n <= 30");
  HamResult r;
  if (auto why = structural_obstruction(g); !why.empty()) {
    r.status = HamStatus::NotHamiltonian;
    r.proof = why;
    return r;
  }
  using Mask = std::uint64_t;
  std::vector<Mask> adj(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) adj[v] |= Mask{1} << w;
  int s = 0;
  for (int v = 1; v < n; ++v)
    if (g.degree(v) < g.degree(s)) s = v;
  const Mask all = (n == 64) ? ~Mask{0} : ((Mask{1} << n) - 1);
  std::vector<int> path{s};
  path.reserve(static_cast<std::size_t>(n));

  auto rec = [&](auto&& self, int cur, Mask unvisited) -> bool {
    ++r.nodes;
    if (!unvisited) return (adj[cur] >> s) & 1;
    const Mask reach = unvisited | (Mask{1} << cur) | (Mask{1} << s);
    if (!(adj[s] & (unvisited | (Mask{1} << cur)))) return false;
    int forced = -1;
    for (Mask m = unvisited; m; m &= m - 1) {
      int w = std::countr_zero(m);
      int avail = std::popcount(adj[w] & reach);
      if (avail < 2) return false;
      if (avail == 2 && cur != s && ((adj[w] >> cur) & 1) && std::popcount(unvisited) > 1) {
        if (forced >= 0) return false;
        forced = w;
      }
    }
    // Unvisited vertices must stay reachable from cur through unvisited vertices.
    Mask seen = adj[cur] & unvisited, frontier = seen;
    while (frontier) {
      int w = std::countr_zero(frontier);
      frontier &= frontier - 1;
      Mask nw = adj[w] & unvisited & ~seen;
      seen |= nw;
      frontier |= nw;
    }
    if (seen != unvisited) return false;
    std::vector<int> cand;
    if (forced >= 0) {
      if (!((adj[cur] >> forced) & 1)) return false;
      cand.push_back(forced);
    } else {
      for (Mask m = adj[cur] & unvisited; m; m &= m - 1) cand.push_back(std::countr_zero(m));
      std::sort(cand.begin(), cand.end(), [&](int a, int b) {
        int da = std::popcount(adj[a] & unvisited), db = std::popcount(adj[b] & unvisited);
        return da != db ? da < db : a < b;
      });
    }
    for (int w : cand) {
      path.push_back(w);
      if (self(self, w, unvisited & ~(Mask{1} << w))) return true;
      path.pop_back();
    }
    return false;
  };
  if (rec(rec, s, all & ~(Mask{1} << s))) {
    r.status = HamStatus::Hamiltonian;
    r.cycle = path;
  } else {
    r.status = HamStatus::NotHamiltonian;
    r.proof = "exhaustive search";
  }
  return r;
}

// --- rotation-extension heuristic ---------------------------------------------

namespace detail {

/// Mutable path with position index, used by the heuristics.
class PathWalker {
 public:
  PathWalker(const Graph& g, int start) : g_(g), pos_(static_cast<std::size_t>(g.n()), -1) {
    path_.push_back(start);
    pos_[start] = 0;
  }
  PathWalker(const Graph& g, const std::vector<int>& path) : g_(g), pos_(static_cast<std::size_t>(g.n()), -1), path_(path) {
    for (std::size_t i = 0; i < path_.size(); ++i) pos_[path_[i]] = static_cast<int>(i);
  }

  const std::vector<int>& path() const { return path_; }
  int end() const { return path_.back(); }
  int front() const { return path_.front(); }
  bool on(int v) const { return pos_[v] >= 0; }
  int size() const { return static_cast<int>(path_.size()); }

  void push(int v) {
    pos_[v] = static_cast<int>(path_.size());
    path_.push_back(v);
  }
  void reverse() {
    std::reverse(path_.begin(), path_.end());
    reindex(0);
  }
  /// Rotation along {end, pivot}.
  void rotate(int pivot) {
    int i = pos_[pivot];
    std::reverse(path_.begin() + i + 1, path_.end());
    reindex(i + 1);
  }
  int pos(int v) const { return pos_[v]; }

 private:
  void reindex(int from) {
    for (int i = from; i < static_cast<int>(path_.size()); ++i) pos_[path_[i]] = i;
  }
  const Graph& g_;
  std::vector<int> pos_;
  std::vector<int> path_;
};

/// Extends at the end while possible, preferring neighbours with few free neighbours.
inline bool greedy_extend(const Graph& g, PathWalker& w, Rng& rng) {
  bool grew = false;
  while (true) {
    int best = -1, best_free = 1 << 30;
    for (int y : g.neighbors(w.end())) {
      if (w.on(y)) continue;
      int f = 0;
      for (int z : g.neighbors(y)) f += !w.on(z);
      if (f < best_free || (f == best_free && coin(rng))) best = y, best_free = f;
    }
    if (best < 0) return grew;
    w.push(best);
    grew = true;
  }
}

}  // namespace detail

/// Rotation-extension with restarts; returns the longest path seen and, if one was
/// closed, a Hamilton cycle in `cycle`.
inline PosaState posa_search(const Graph& g, int restarts, std::uint64_t seed,
                             std::vector<int>* cycle = nullptr, const std::vector<int>* hint = nullptr) {
  const int n = g.n();
  PosaState best;
  if (n == 0) return best;
  best.path = {0};
  Rng rng = stream(seed, "posa-search");
  const bool can_close = n >= 3 && g.min_degree() >= 2;
  for (int rs = 0; rs < std::max(restarts, 1); ++rs) {
    detail::PathWalker w = (rs == 0 && hint && !hint->empty())
                               ? detail::PathWalker(g, *hint)
                               : detail::PathWalker(g, uniform_int(rng, 0, n - 1));
    const long long budget = 30LL * n + 200;
    for (long long step = 0; step < budget; ++step) {
      detail::greedy_extend(g, w, rng);
      w.reverse();
      detail::greedy_extend(g, w, rng);
      if (w.size() > static_cast<int>(best.path.size())) best.path = w.path();
      if (w.size() == n && can_close) {
        if (g.has_edge(w.front(), w.end())) {
          if (cycle) *cycle = w.path();
          best.path = w.path();
          return best;
        }
        // Closing search: rotation closure from both ends.
        for (int side = 0; side < 2; ++side) {
          PosaState st;
          st.path = w.path();
          auto cl = endpoint_expansion(g, st, SIZE_MAX, false);
          for (std::size_t k = 0; k < cl.endpoints.size(); ++k)
            if (g.has_edge(cl.endpoints[k], st.path.front())) {
              if (cycle) *cycle = cl.paths[k];
              best.path = cl.paths[k];
              return best;
            }
          w.reverse();
        }
        if (!cycle) return best;
      }
      if (w.size() == n && !can_close) break;
      // Stuck: rotate, preferring a pivot whose new endpoint can extend.
      const auto& nb = g.neighbors(w.end());
      std::vector<int> pivots, good;
      for (int y : nb) {
        int i = w.pos(y);
        if (i >= 0 && i <= w.size() - 3) {
          pivots.push_back(y);
          int ne = w.path()[i + 1];
          for (int z : g.neighbors(ne))
            if (!w.on(z)) {
              good.push_back(y);
              break;
            }
        }
      }
      if (!good.empty())
        w.rotate(good[uniform_int(rng, 0, static_cast<int>(good.size()) - 1)]);
      else if (!pivots.empty() && coin(rng))
        w.rotate(pivots[uniform_int(rng, 0, static_cast<int>(pivots.size()) - 1)]);
      else
        w.reverse();
    }
  }
  return best;
}

/// Best path found by rotation-extension; never claims optimality.
inline PosaState longest_path_heuristic(const Graph& g, int iters, std::uint64_t seed) {
  return posa_search(g, iters, seed);
}

/// Hamiltonicity: exact for n <= 30; otherwise structural proofs, then a
/// rotation-extension search whose failure is reported as presumed-dead.
inline HamResult decide_hamiltonicity(const Graph& g, int restarts = 200, std::uint64_t seed = 1) {
  if (g.n() <= kExactHamiltonLimit) return is_hamiltonian_exact(g);
  HamResult r;
  if (auto why = structural_obstruction(g); !why.empty()) {
    r.status = HamStatus::NotHamiltonian;
    r.proof = why;
    return r;
  }
  std::vector<int> cyc;
  posa_search(g, restarts, seed, &cyc);
  if (!cyc.empty() && is_hamilton_cycle(g, cyc)) {
    r.status = HamStatus::Hamiltonian;
    r.cycle = cyc;
  } else {
    r.status = HamStatus::PresumedDead;
    r.proof = "rotation-extension found no cycle in " + std::to_string(restarts) + " restarts";
  }
  return r;
}

// --- boosters -----------------------------------------------------------------

struct BoosterSet {
  std::vector<Edge> pairs;                  ///< sorted, u < v
  std::vector<std::vector<int>> partners;   ///< B(v)
  bool exact = false;
  int path_length = 0;  ///< length of the longest (witness) path of the host
  bool host_hamiltonian = false;

  bool contains(int u, int v) const { return std::binary_search(pairs.begin(), pairs.end(), canon(u, v)); }
};

namespace detail {

inline void finish(BoosterSet& b, int n) {
  std::sort(b.pairs.begin(), b.pairs.end());
  b.pairs.erase(std::unique(b.pairs.begin(), b.pairs.end()), b.pairs.end());
  b.partners.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : b.pairs) {
    b.partners[u].push_back(v);
    b.partners[v].push_back(u);
  }
  for (auto& p : b.partners) std::sort(p.begin(), p.end());
}

inline Graph plus_edge(const Graph& g, int u, int v) {
  auto es = g.edges();
  es.push_back(canon(u, v));
  return Graph(g.n(), es);
}

inline std::vector<Edge> non_edges(const Graph& g) {
  std::vector<Edge> out;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

}  // namespace detail

/// Every non-edge tested against the definition with exact longest paths (n <= 10).
inline BoosterSet boosters_exact(const Graph& g) {
  if (g.n() > kExactBoosterLimit) throw ValidationError("exact boosters limited to n <= 10");
  BoosterSet b;
  b.exact = true;
  b.path_length = static_cast<int>(longest_path_exact(g).size()) - 1;
  b.host_hamiltonian = !hamilton_cycle_dp(g).empty();
  for (auto [u, v] : detail::non_edges(g)) {
    Graph h = detail::plus_edge(g, u, v);
    bool boost = !hamilton_cycle_dp(h).empty() ||
                 static_cast<int>(longest_path_exact(h).size()) - 1 > b.path_length;
    if (boost) b.pairs.emplace_back(u, v);
  }
  detail::finish(b, g.n());
  return b;
}

namespace detail {

/// Pairs witnessed by the rotation closure of a maximal path p: closing pairs
/// {v0, x} and extension pairs {x, y} with y off the path.
inline void collect_from_closure(const Graph& g, const std::vector<int>& p, const EndpointClosure& cl, BoosterSet& b,
                                 const std::vector<char>& on, bool outgoing) {
  const int v0 = p.front();
  const bool spanning = static_cast<int>(p.size()) == g.n();
  for (int x : cl.endpoints) {
    if (x != v0 && !g.has_edge(v0, x) && (spanning || outgoing)) b.pairs.push_back(canon(v0, x));
    for (int y = 0; y < g.n(); ++y)
      if (!on[y]) b.pairs.push_back(canon(x, y));
  }
}

inline EndpointClosure closure_of(const Graph& g, const std::vector<int>& p) {
  PosaState st;
  st.path = p;
  return endpoint_expansion(g, st, SIZE_MAX, false);
}

}  // namespace detail

/// Path-improving pairs relative to the path p (from both ends; with `full`, also from
/// every first-level endpoint). They are boosters whenever p is a longest path.
inline BoosterSet boosters_from_path(const Graph& g, std::vector<int> p, bool full = true) {
  const int n = g.n();
  if (!is_path_of(g, p) || p.empty()) throw ValidationError("not a path of the graph");
  BoosterSet b;
  b.path_length = static_cast<int>(p.size()) - 1;
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  for (int v : p) on[v] = 1;
  bool outgoing = false;
  for (int v : p)
    for (int y : g.neighbors(v)) outgoing |= !on[y];
  for (int side = 0; side < 2; ++side) {
    auto cl = detail::closure_of(g, p);
    detail::collect_from_closure(g, p, cl, b, on, outgoing);
    if (full)
      for (std::size_t k = 1; k < cl.paths.size(); ++k) {
        auto q = cl.paths[k];
        std::reverse(q.begin(), q.end());
        detail::collect_from_closure(g, q, detail::closure_of(g, q), b, on, outgoing);
      }
    std::reverse(p.begin(), p.end());
  }
  detail::finish(b, n);
  return b;
}

/// Rotation-derived boosters. The path is exact (longest) for n <= 20 and the best
/// heuristic path otherwise; `full` adds closures from every first-level endpoint.
inline BoosterSet boosters_witnessed(const Graph& g, bool full = true, std::uint64_t seed = 1,
                                     const std::vector<int>* path_hint = nullptr, int restarts = 20) {
  const int n = g.n();
  BoosterSet b;
  if (n < 2) return b;
  std::vector<int> p;
  std::vector<int> cyc;
  if (n <= kExactLongestPathLimit) {
    p = longest_path_exact(g);
    if (static_cast<int>(p.size()) == n) cyc = hamilton_cycle_dp(g);
  } else {
    p = posa_search(g, restarts, seed, &cyc, path_hint).path;
  }
  if (!cyc.empty()) {
    b.path_length = n - 1;
    b.host_hamiltonian = true;
    b.pairs = detail::non_edges(g);
    detail::finish(b, n);
    return b;
  }
  return boosters_from_path(g, p, full);
}

/// Given a path p of g and a pair {u, v} witnessed by p's closure, returns a path of g + uv
/// one longer than p, or a Hamilton cycle of g + uv. Empty if the pair is not witnessed.
inline std::vector<int> apply_booster(const Graph& g, const std::vector<int>& path, int u, int v, bool* cycle = nullptr) {
  const int n = g.n();
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  for (int x : path) on[x] = 1;
  if (cycle) *cycle = false;
  auto try_from = [&](const std::vector<int>& p) -> std::vector<int> {
    auto cl = detail::closure_of(g, p);
    const int v0 = p.front();
    for (std::size_t k = 0; k < cl.endpoints.size(); ++k) {
      int x = cl.endpoints[k];
      for (int side = 0; side < 2; ++side) {
        int a = side ? v : u, b = side ? u : v;
        if (a != x) continue;
        const auto& q = cl.paths[k];
        if (!on[b]) {
          auto out = q;
          out.push_back(b);
          return out;
        }
        if (b == v0) {
          if (static_cast<int>(q.size()) == n) {
            if (cycle) *cycle = true;
            return q;
          }
          // cycle on V(q) plus an edge leaving it gives a longer path
          for (std::size_t i = 0; i < q.size(); ++i)
            for (int y : g.neighbors(q[i]))
              if (!on[y]) {
                std::vector<int> out{y};
                for (std::size_t j = 0; j < q.size(); ++j) out.push_back(q[(i + j) % q.size()]);
                return out;
              }
        }
      }
    }
    return {};
  };
  auto r = try_from(path);
  if (r.empty()) {
    auto rev = path;
    std::reverse(rev.begin(), rev.end());
    r = try_from(rev);
  }
  return r;
}

/// Extends p greedily at both ends until maximal.
inline std::vector<int> extend_maximal(const Graph& g, std::vector<int> p) {
  std::vector<char> on(static_cast<std::size_t>(g.n()), 0);
  for (int x : p) on[x] = 1;
  for (int side = 0; side < 2; ++side) {
    for (bool grew = true; grew;) {
      grew = false;
      for (int y : g.neighbors(p.back()))
        if (!on[y]) {
          on[y] = 1;
          p.push_back(y);
          grew = true;
          break;
        }
    }
    std::reverse(p.begin(), p.end());
  }
  return p;
}

// --- absorption ---------------------------------------------------------------

struct AbsorbResult {
  bool success = false;
  std::vector<int> cycle;
  std::vector<Edge> added;
  int iterations = 0;
  Graph stuck;  ///< current graph when no booster was available
  std::string trace;
};

/// Adds boosters from pool - forbidden until the graph becomes Hamiltonian.
inline AbsorbResult absorb_boosters(const Graph& g0, const Graph& pool, const Graph& forbidden, int cap = -1,
                                    std::uint64_t seed = 1) {
  const int n = g0.n();
  if (pool.n() != n || forbidden.n() != n) throw ValidationError("vertex sets differ");
  if (cap < 0) cap = n;
  AbsorbResult r;
  Graph cur = g0;
  for (int it = 0;; ++it) {
    HamResult h = decide_hamiltonicity(cur, 50, derive_seed(derive_seed(seed, "absorb-ham"), static_cast<std::uint64_t>(it), 0));
    if (h.hamiltonian()) {
      r.success = true;
      r.cycle = h.cycle;
      r.iterations = it;
      return r;
    }
    if (it >= cap) {
      r.iterations = it;
      r.stuck = cur;
      r.trace = "iteration cap reached";
      return r;
    }
    BoosterSet b = n <= kExactBoosterLimit ? boosters_exact(cur) : boosters_witnessed(cur, true, seed);
    std::optional<Edge> pick;
    for (auto e : b.pairs)
      if (pool.has_edge(e.first, e.second) && !forbidden.has_edge(e.first, e.second)) {
        pick = e;
        break;
      }
    if (!pick) {
      r.iterations = it;
      r.stuck = cur;
      r.trace = "no booster available in pool after " + std::to_string(it) + " additions";
      return r;
    }
    r.added.push_back(*pick);
    cur = detail::plus_edge(cur, pick->first, pick->second);
  }
}

// --- expansion verdicts -------------------------------------------------------

enum class Verdict { Certified, Refuted, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

struct ExpansionVerdict {
  Verdict status = Verdict::Unknown;
  std::vector<int> witness;   ///< violating set when refuted
  std::string clause;         ///< Q1, Q2 or magnifier
  std::string method;
  bool vacuous = false;       ///< no set size is constrained at these parameters
};

enum class CheckMode { Exact, Heuristic };

namespace detail {

/// Lower bound on |U + N(U)| for |U| = s in an (n, d, lambda)-graph.
inline double tanner_bound(double n, double d, double lam, double s) {
  return d * d * s / (lam * lam + (d * d - lam * lam) * s / n);
}

/// Smallest-neighbourhood set of each size reachable by greedy growth, used for refutation.
template <class Violates>
std::optional<std::vector<int>> greedy_refute(const Graph& g, int max_size, Rng& rng, int seeds, Violates&& violates) {
  const int n = g.n();
  for (int t = 0; t < seeds; ++t) {
    int s0 = t < n ? t : uniform_int(rng, 0, n - 1);
    std::vector<int> u{s0};
    std::vector<char> in(static_cast<std::size_t>(n), 0), nb(static_cast<std::size_t>(n), 0);
    in[s0] = 1;
    for (int y : g.neighbors(s0)) nb[y] = 1;
    while (true) {
      int nsize = static_cast<int>(std::count(nb.begin(), nb.end(), 1));
      if (violates(static_cast<int>(u.size()), nsize)) {
        std::sort(u.begin(), u.end());
        return u;
      }
      if (static_cast<int>(u.size()) >= max_size) break;
      // add the vertex (preferably a neighbour) that grows N(U) the least
      int pick = -1, best = 1 << 30;
      for (int v = 0; v < n; ++v) {
        if (in[v]) continue;
        int grow = nb[v] ? -1 : 0;
        for (int y : g.neighbors(v)) grow += !in[y] && !nb[y];
        if (grow < best || (grow == best && coin(rng))) best = grow, pick = v;
      }
      if (pick < 0) break;
      in[pick] = 1;
      nb[pick] = 0;
      u.push_back(pick);
      for (int y : g.neighbors(pick))
        if (!in[y]) nb[y] = 1;
    }
  }
  return std::nullopt;
}

template <class Check>
std::optional<std::vector<int>> exact_subsets(const Graph& g, int max_size, Check&& check) {
  const int n = g.n();
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (int w : g.neighbors(v)) adj[v] |= 1u << w;
  for (int k = 1; k <= std::min(max_size, n); ++k) {
    // Gosper's hack over k-subsets.
    std::uint32_t mask = (1u << k) - 1;
    const std::uint32_t limit = 1u << n;
    while (mask < limit) {
      std::uint32_t nb = 0;
      for (std::uint32_t m = mask; m; m &= m - 1) nb |= adj[std::countr_zero(m)];
      nb &= ~mask;
      if (check(k, std::popcount(nb))) {
        std::vector<int> u;
        for (std::uint32_t m = mask; m; m &= m - 1) u.push_back(std::countr_zero(m));
        return u;
      }
      std::uint32_t c = mask & -mask, r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// (n, eps)-expander: |V0| < eps n needs |N| >= 10|V0| (Q1); eps n <= |V0| <= 2 eps n
/// needs |N| >= (1 + 12 eps) n / 2 (Q2).
inline ExpansionVerdict expander_check(const Graph& g, double eps, CheckMode mode, std::uint64_t seed = 1) {
  const int n = g.n();
  if (eps <= 0) throw ValidationError("epsilon must be positive");
  const double en = eps * n;
  const double q2 = (1 + 12 * eps) * n / 2.0;
  auto violates = [&](int s, int nsize) {
    if (s < en) return nsize < 10 * s;
    if (s <= 2 * en) return nsize < q2;
    return false;
  };
  auto clause = [&](int s) { return s < en ? "Q1" : "Q2"; };
  const int max_size = static_cast<int>(std::floor(2 * en + 1e-12));
  ExpansionVerdict v;
  v.vacuous = max_size < 1;
  if (mode == CheckMode::Exact) {
    if (n > 20) throw ValidationError("exact expander check limited to n <= 20");
    v.method = "exact-enumeration";
    if (auto w = detail::exact_subsets(g, max_size, violates)) {
      v.status = Verdict::Refuted;
      v.witness = *w;
      v.clause = clause(static_cast<int>(w->size()));
    } else {
      v.status = Verdict::Certified;
    }
    return v;
  }
  Rng rng = stream(seed, "expander-check");
  if (auto w = detail::greedy_refute(g, max_size, rng, std::min(n, 400), violates)) {
    v.status = Verdict::Refuted;
    v.witness = *w;
    v.clause = clause(static_cast<int>(w->size()));
    v.method = "greedy-refutation";
    return v;
  }
  int d = g.regular_degree();
  if (d > 0) {
    double lam = lambda(g).lambda;
    bool ok = true;
    for (int s = 1; s <= max_size && ok; ++s)
      ok = !violates(s, static_cast<int>(std::ceil(detail::tanner_bound(n, d, lam, s) - s - 1e-9)));
    if (ok) {
      v.status = Verdict::Certified;
      v.method = "spectral (Tanner bound)";
      return v;
    }
  }
  v.method = "greedy search found no violation";
  return v;
}

/// (k, l)-magnifier: every |U| <= k has |N(U)| >= l |U|.
inline ExpansionVerdict magnifier_check(const Graph& g, int k, double l, CheckMode mode, std::uint64_t seed = 1) {
  const int n = g.n();
  if (k < 0) throw ValidationError("k must be nonnegative");
  auto violates = [&](int s, int nsize) { return nsize < l * s; };
  ExpansionVerdict v;
  v.clause = "magnifier";
  v.vacuous = k < 1;
  if (mode == CheckMode::Exact) {
    if (n > 20) throw ValidationError("exact magnifier check limited to n <= 20");
    v.method = "exact-enumeration";
    if (auto w = detail::exact_subsets(g, k, violates)) {
      v.status = Verdict::Refuted;
      v.witness = *w;
    } else {
      v.status = Verdict::Certified;
    }
    return v;
  }
  Rng rng = stream(seed, "magnifier-check");
  if (auto w = detail::greedy_refute(g, k, rng, std::min(n, 400), violates)) {
    v.status = Verdict::Refuted;
    v.witness = *w;
    v.method = "greedy-refutation";
    return v;
  }
  int d = g.regular_degree();
  if (d > 0) {
    double lam = lambda(g).lambda;
    bool ok = true;
    for (int s = 1; s <= k && ok; ++s)
      ok = !violates(s, static_cast<int>(std::ceil(detail::tanner_bound(n, d, lam, s) - s - 1e-9)));
    if (ok) {
      v.status = Verdict::Certified;
      v.method = "spectral (Tanner bound)";
      return v;
    }
  }
  v.method = "greedy search found no violation";
  return v;
}

}  // namespace rlab
