#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

#include "graph.hpp"

namespace rlab {

/// Dinic max-flow on small integer capacities.
class Dinic {
 public:
  explicit Dinic(int n) : head_(static_cast<std::size_t>(n), -1), level_(static_cast<std::size_t>(n)), it_(static_cast<std::size_t>(n)) {}

  void add_arc(int u, int v, int cap, int rev_cap = 0) {
    arcs_.push_back({v, cap, head_[u]});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, rev_cap, head_[v]});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
  }

  /// Max flow from s to t, stopping once `limit` units are routed.
  int max_flow(int s, int t, int limit = std::numeric_limits<int>::max()) {
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
      for (std::size_t i = 0; i < it_.size(); ++i) it_[i] = head_[i];
      int f;
      while (flow < limit && (f = dfs(s, t, limit - flow)) > 0) flow += f;
    }
    return flow;
  }

 private:
  struct Arc {
    int to, cap, next;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int a = head_[u]; a >= 0; a = arcs_[a].next)
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[u] + 1;
          q.push(arcs_[a].to);
        }
    }
    return level_[t] >= 0;
  }

  int dfs(int u, int t, int pushed) {
    if (u == t) return pushed;
    for (int& a = it_[u]; a >= 0; a = arcs_[a].next) {
      Arc& e = arcs_[a];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      int f = dfs(e.to, t, std::min(pushed, e.cap));
      if (f > 0) {
        e.cap -= f;
        arcs_[a ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<int> head_, level_, it_;
  std::vector<Arc> arcs_;
};

/// Number of edge-disjoint s-t paths, capped at `limit`.
inline int local_edge_connectivity(const Graph& g, int s, int t, int limit = std::numeric_limits<int>::max()) {
  Dinic f(g.n());
  for (auto [u, v] : g.edges()) f.add_arc(u, v, 1, 1);
  return f.max_flow(s, t, limit);
}

/// Global edge connectivity: min over t of the root-t max flow.
inline int edge_connectivity(const Graph& g) {
  if (g.n() <= 1 || !is_connected(g)) return 0;
  int best = g.min_degree();
  for (int t = 1; t < g.n() && best > 0; ++t) best = std::min(best, local_edge_connectivity(g, 0, t, best));
  return best;
}

/// Number of internally vertex-disjoint s-t paths for non-adjacent s, t (vertex splitting).
inline int local_vertex_connectivity(const Graph& g, int s, int t, int limit = std::numeric_limits<int>::max()) {
  const int n = g.n();
  const int big = n + 1;
  Dinic f(2 * n);
  for (int v = 0; v < n; ++v) f.add_arc(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
  for (auto [u, v] : g.edges()) {
    f.add_arc(2 * u + 1, 2 * v, big);
    f.add_arc(2 * v + 1, 2 * u, big);
  }
  return f.max_flow(2 * s + 1, 2 * t, limit);
}

/// Global vertex connectivity; K_n has connectivity n - 1 by convention.
inline int vertex_connectivity(const Graph& g) {
  const int n = g.n();
  if (n <= 1) return 0;
  if (!is_connected(g)) return 0;
  int best = n - 1;
  // Some vertex among the first best+1 lies outside a minimum separator.
  for (int i = 0; i < n && i <= best; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j)) best = std::min(best, local_vertex_connectivity(g, i, j, best));
  return best;
}

}  // namespace rlab
