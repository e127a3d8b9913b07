#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <vector>

#include "graph.hpp"

namespace rlab {

/// Tutte–Berge witness: removing `removed` leaves `odd_components` odd components,
/// so every matching misses at least odd_components - |removed| vertices.
struct TutteWitness {
  std::vector<int> removed;
  int odd_components = 0;
  int deficiency() const { return odd_components - static_cast<int>(removed.size()); }
};

struct MatchingResult {
  std::vector<int> mate;  ///< partner or -1
  int size = 0;
  bool perfect = false;
  TutteWitness witness;    ///< filled when imperfect
  bool witness_verified = false;
};

/// Counts odd components of G - S.
inline int odd_components_after_removal(const Graph& g, const std::vector<int>& s) {
  auto drop = to_mask(g.n(), s);
  std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
  int odd = 0;
  std::vector<int> stack;
  for (int r = 0; r < g.n(); ++r) {
    if (drop[r] || comp[r] >= 0) continue;
    int size = 0;
    comp[r] = r;
    stack.push_back(r);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      ++size;
      for (int y : g.neighbors(x))
        if (!drop[y] && comp[y] < 0) {
          comp[y] = r;
          stack.push_back(y);
        }
    }
    odd += size % 2;
  }
  return odd;
}

namespace detail {

/// Edmonds' blossom algorithm (BFS with base contraction).
class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g), n_(g.n()), match_(static_cast<std::size_t>(n_), -1), p_(static_cast<std::size_t>(n_)),
        base_(static_cast<std::size_t>(n_)), used_(static_cast<std::size_t>(n_)),
        blossom_(static_cast<std::size_t>(n_)), mark_(static_cast<std::size_t>(n_)) {}

  std::vector<int> solve() {
    for (int v = 0; v < n_; ++v)
      if (match_[v] < 0)
        for (int u : g_.neighbors(v))
          if (match_[u] < 0) {
            match_[u] = v;
            match_[v] = u;
            break;
          }
    for (int v = 0; v < n_; ++v)
      if (match_[v] < 0) {
        int end = search({v});
        if (end >= 0) augment(end);
      }
    return match_;
  }

  /// Multi-root search on a maximum matching; returns the odd-labelled vertices.
  std::vector<int> odd_vertices() {
    std::vector<int> roots;
    for (int v = 0; v < n_; ++v)
      if (match_[v] < 0) roots.push_back(v);
    if (search(roots) >= 0) throw RuntimeFailure("matching was not maximum");
    std::vector<int> odd;
    for (int v = 0; v < n_; ++v)
      if (!used_[v] && p_[v] >= 0) odd.push_back(v);
    return odd;
  }

 private:
  int lca(int a, int b) {
    std::fill(mark_.begin(), mark_.end(), 0);
    while (true) {
      a = base_[a];
      mark_[a] = 1;
      if (match_[a] < 0) break;
      a = p_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (mark_[b]) return b;
      if (match_[b] < 0) throw RuntimeFailure("blossom spans two search trees");
      b = p_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[match_[v]]] = 1;
      p_[v] = child;
      child = match_[v];
      v = p_[match_[v]];
    }
  }

  /// BFS from the given exposed roots; returns an exposed endpoint of an augmenting path or -1.
  int search(const std::vector<int>& roots) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(p_.begin(), p_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    std::queue<int> q;
    for (int r : roots) {
      used_[r] = 1;
      q.push(r);
    }
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (used_[to]) {
          int cur = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i)
            if (blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                q.push(i);
              }
            }
        } else if (p_[to] < 0) {
          p_[to] = v;
          if (match_[to] < 0) return to;
          used_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  void augment(int v) {
    while (v >= 0) {
      int pv = p_[v], ppv = match_[pv];
      match_[v] = pv;
      match_[pv] = v;
      v = ppv;
    }
  }

  const Graph& g_;
  int n_;
  std::vector<int> match_, p_, base_;
  std::vector<char> used_, blossom_, mark_;
};

}  // namespace detail

/// Maximum matching; an imperfect result carries a verified Tutte–Berge witness.
inline MatchingResult perfect_matching(const Graph& g) {
  detail::Blossom b(g);
  MatchingResult r;
  r.mate = b.solve();
  r.size = static_cast<int>(std::count_if(r.mate.begin(), r.mate.end(), [](int x) { return x >= 0; })) / 2;
  r.perfect = 2 * r.size == g.n();
  if (!r.perfect) {
    r.witness.removed = b.odd_vertices();
    r.witness.odd_components = odd_components_after_removal(g, r.witness.removed);
    r.witness_verified = r.witness.deficiency() == g.n() - 2 * r.size;
  }
  return r;
}

}  // namespace rlab
