#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rlab {

/// Bad input (maps to CLI exit code 2).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input that an algorithm could not finish on (exit code 3).
struct RuntimeFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Edge = std::pair<int, int>;

inline Edge canon(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

inline std::uint64_t edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

/// Simple undirected graph on [0, n) with sorted adjacency lists. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(check_n(n))) {}

  /// Builds from an edge list; rejects loops, duplicates and out-of-range endpoints.
  Graph(int n, const std::vector<Edge>& edges) : adj_(static_cast<std::size_t>(check_n(n))) {
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw ValidationError("edge endpoint out of range");
      if (u == v) throw ValidationError("self-loop in edge list");
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end())
        throw ValidationError("parallel edge in edge list");
    }
    m_ = edges.size();
  }

  int n() const { return static_cast<int>(adj_.size()); }
  std::size_t m() const { return m_; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  bool has_edge(int u, int v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    int w = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), w);
  }

  int max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
  }
  int min_degree() const {
    if (adj_.empty()) return 0;
    int d = n();
    for (const auto& a : adj_) d = std::min(d, static_cast<int>(a.size()));
    return d;
  }
  /// Common degree if regular, -1 otherwise.
  int regular_degree() const {
    if (adj_.empty()) return 0;
    int d = degree(0);
    for (const auto& a : adj_)
      if (static_cast<int>(a.size()) != d) return -1;
    return d;
  }

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (int u = 0; u < n(); ++u)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

 private:
  static int check_n(int n) {
    if (n < 0) throw ValidationError("negative vertex count");
    return n;
  }
  std::vector<std::vector<int>> adj_;
  std::size_t m_ = 0;
};

/// Incremental edge-set builder; duplicates are ignored.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : n_(n) {}
  bool add(int u, int v) {
    if (u == v) throw ValidationError("self-loop");
    auto e = canon(u, v);
    edges_.push_back(e);
    return true;
  }
  Graph build() {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    return Graph(n_, edges_);
  }

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// Vertex 2-colouring with labels 1 and 2.
struct Partition {
  std::vector<int> side;

  int size(int s) const {
    return static_cast<int>(std::count(side.begin(), side.end(), s));
  }
  bool valid(int n) const {
    if (static_cast<int>(side.size()) != n) return false;
    return std::all_of(side.begin(), side.end(), [](int s) { return s == 1 || s == 2; });
  }
};

/// Witness for rho(G, tau). The ratio is edges/|witness| kept as an exact fraction.
struct DensityReport {
  std::vector<int> witness;
  long long edges = 0;
  long long size = 1;
  bool exact = true;
  double ratio() const { return static_cast<double>(edges) / static_cast<double>(size); }
};

// --- set operations ------------------------------------------------------

inline std::vector<char> to_mask(int n, const std::vector<int>& set) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (int v : set) {
    if (v < 0 || v >= n) throw ValidationError("vertex out of range");
    mask[v] = 1;
  }
  return mask;
}

/// e(U): edges with both endpoints in U.
inline long long edges_within(const Graph& g, const std::vector<int>& u) {
  auto mask = to_mask(g.n(), u);
  long long c = 0;
  for (int x : u)
    for (int y : g.neighbors(x))
      if (mask[y] && x < y) ++c;
  return c;
}

/// e(U, W) for disjoint U, W.
inline long long edges_between(const Graph& g, const std::vector<int>& u, const std::vector<int>& w) {
  auto mw = to_mask(g.n(), w);
  long long c = 0;
  for (int x : u)
    for (int y : g.neighbors(x)) c += mw[y];
  return c;
}

/// External neighbourhood N(U) = { v not in U : v adjacent to U }.
inline std::vector<int> neighborhood(const Graph& g, const std::vector<int>& u) {
  auto mu = to_mask(g.n(), u);
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  std::vector<int> out;
  for (int x : u)
    for (int y : g.neighbors(x))
      if (!mu[y] && !seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<int> components(const Graph& g, int* count = nullptr) {
  std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
  int c = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : g.neighbors(x))
        if (comp[y] < 0) {
          comp[y] = c;
          stack.push_back(y);
        }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

inline bool is_connected(const Graph& g) {
  int c = 0;
  components(g, &c);
  return c <= 1;
}

/// Subgraph induced on the vertex mask, keeping the vertex set [0, n).
inline Graph induced_on(const Graph& g, const std::vector<char>& keep) {
  std::vector<Edge> es;
  for (auto [u, v] : g.edges())
    if (keep[u] && keep[v]) es.emplace_back(u, v);
  return Graph(g.n(), es);
}

/// Graph with the vertices in `drop` isolated.
inline Graph without_vertices(const Graph& g, const std::vector<char>& drop) {
  std::vector<char> keep(drop.size());
  for (std::size_t i = 0; i < drop.size(); ++i) keep[i] = !drop[i];
  return induced_on(g, keep);
}

/// G_{V1,V2}: edges of g whose endpoints lie on opposite sides.
inline Graph induced_bipartite(const Graph& g, const Partition& p) {
  if (!p.valid(g.n())) throw ValidationError("partition does not cover the vertex set");
  std::vector<Edge> es;
  for (auto [u, v] : g.edges())
    if (p.side[u] != p.side[v]) es.emplace_back(u, v);
  return Graph(g.n(), es);
}

struct Removal {
  Graph graph;
  int delta_h = 0;
};

/// G - H together with Delta(H).
inline Removal remove_subgraph(const Graph& g, const Graph& h) {
  if (g.n() != h.n()) throw ValidationError("vertex sets differ");
  for (auto [u, v] : h.edges())
    if (!g.has_edge(u, v)) throw ValidationError("h contains an edge absent from g");
  std::vector<Edge> es;
  for (auto [u, v] : g.edges())
    if (!h.has_edge(u, v)) es.emplace_back(u, v);
  return {Graph(g.n(), es), h.max_degree()};
}

inline Graph graph_union(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) throw ValidationError("vertex sets differ");
  GraphBuilder gb(a.n());
  for (auto [u, v] : a.edges()) gb.add(u, v);
  for (auto [u, v] : b.edges()) gb.add(u, v);
  return gb.build();
}

inline Graph complete_graph(int n) {
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph(n, es);
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.push_back(canon(i, (i + 1) % n));
  return Graph(n, es);
}

/// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
inline Graph petersen_graph() {
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.push_back(canon(i, (i + 1) % 5));
    es.push_back(canon(i, i + 5));
    es.push_back(canon(5 + i, 5 + (i + 2) % 5));
  }
  return Graph(10, es);
}

// --- density -------------------------------------------------------------

namespace detail {

inline bool denser(long long e1, long long s1, long long e2, long long s2) {
  return e1 * s2 > e2 * s1;
}

/// Peeling plus greedy growth; always returns a valid lower-bound witness.
inline DensityReport density_heuristic(const Graph& g, int tau) {
  const int n = g.n();
  DensityReport best;
  best.witness = {0};
  best.edges = 0;
  best.size = 1;
  best.exact = false;

  // Greedy growth from every vertex: add the outside vertex with most links into U.
  std::vector<int> links(static_cast<std::size_t>(n));
  std::vector<char> in(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    std::fill(links.begin(), links.end(), 0);
    std::fill(in.begin(), in.end(), 0);
    std::vector<int> u{s};
    in[s] = 1;
    std::vector<int> frontier;
    for (int y : g.neighbors(s)) {
      if (links[y]++ == 0) frontier.push_back(y);
    }
    long long e = 0;
    while (static_cast<int>(u.size()) < tau) {
      int pick = -1;
      for (int y : frontier)
        if (!in[y] && (pick < 0 || links[y] > links[pick] || (links[y] == links[pick] && y < pick)))
          pick = y;
      if (pick < 0) break;
      in[pick] = 1;
      e += links[pick];
      u.push_back(pick);
      for (int y : g.neighbors(pick))
        if (!in[y] && links[y]++ == 0) frontier.push_back(y);
      if (denser(e, static_cast<long long>(u.size()), best.edges, best.size)) {
        best.witness = u;
        best.edges = e;
        best.size = static_cast<long long>(u.size());
      }
    }
  }
  std::sort(best.witness.begin(), best.witness.end());
  return best;
}

}  // namespace detail

/// rho(G, tau) = max e(U)/|U| over |U| <= tau. Exact for tau <= 20 unless the
/// search exceeds `budget` expansions, in which case the heuristic witness is returned.
inline DensityReport density_rho(const Graph& g, int tau, long long budget = 50'000'000) {
  const int n = g.n();
  if (tau < 1 || tau > n) throw ValidationError("tau out of range");
  if (tau > 20) return detail::density_heuristic(g, tau);

  DensityReport best;
  best.witness = {0};
  best.edges = 0;
  best.size = 1;
  if (g.m() == 0) return best;

  // The maximum is attained on a connected set, so enumerate connected sets
  // rooted at their minimum vertex (each set visited once via the extension rule).
  long long work = 0;
  bool exhausted = false;
  std::vector<int> current;
  std::vector<char> in(static_cast<std::size_t>(n), 0), banned(static_cast<std::size_t>(n), 0);

  auto rec = [&](auto&& self, std::vector<int> ext, long long e) -> void {
    if (exhausted) return;
    if (++work > budget) {
      exhausted = true;
      return;
    }
    if (detail::denser(e, static_cast<long long>(current.size()), best.edges, best.size)) {
      best.witness = current;
      best.edges = e;
      best.size = static_cast<long long>(current.size());
    }
    if (static_cast<int>(current.size()) == tau) return;
    // Upper bound on achievable ratio: adding k vertices adds at most
    // k*|current| + k(k-1)/2 edges; prune when no size can beat best.
    {
      long long s = static_cast<long long>(current.size());
      bool hopeful = false;
      for (long long k = 1; s + k <= tau && !hopeful; ++k)
        if (detail::denser(e + k * s + k * (k - 1) / 2, s + k, best.edges, best.size)) hopeful = true;
      if (!hopeful) return;
    }
    std::vector<int> local_banned;
    while (!ext.empty()) {
      int w = ext.back();
      ext.pop_back();
      long long add = 0;
      for (int y : g.neighbors(w)) add += in[y];
      std::vector<int> next = ext;
      for (int y : g.neighbors(w))
        if (!in[y] && !banned[y] && y > current.front() &&
            std::find(next.begin(), next.end(), y) == next.end())
          next.push_back(y);
      in[w] = 1;
      current.push_back(w);
      banned[w] = 1;
      self(self, next, e + add);
      current.pop_back();
      in[w] = 0;
      local_banned.push_back(w);
    }
    for (int w : local_banned) banned[w] = 0;
  };

  for (int s = 0; s < n && !exhausted; ++s) {
    current = {s};
    in[s] = 1;
    banned[s] = 1;
    std::vector<int> ext;
    for (int y : g.neighbors(s))
      if (y > s) ext.push_back(y);
    rec(rec, ext, 0);
    in[s] = 0;
    banned[s] = 0;
  }
  if (exhausted) {
    auto h = detail::density_heuristic(g, tau);
    if (detail::denser(best.edges, best.size, h.edges, h.size)) {
      best.exact = false;
      std::sort(best.witness.begin(), best.witness.end());
      return best;
    }
    return h;
  }
  std::sort(best.witness.begin(), best.witness.end());
  return best;
}

// --- edge-list I/O -------------------------------------------------------

inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.n() << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& is) {
  long long n = -1, m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) throw ValidationError("malformed edge-list header");
  std::vector<Edge> es;
  es.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!(is >> u >> v)) throw ValidationError("edge list shorter than declared m");
    if (u >= v) throw ValidationError("edge line must satisfy u < v");
    if (v >= n || u < 0) throw ValidationError("edge endpoint out of range");
    es.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return Graph(static_cast<int>(n), es);
}

inline void save_graph(const std::string& path, const Graph& g) {
  std::ofstream os(path);
  if (!os) throw RuntimeFailure("cannot open " + path + " for writing");
  write_edge_list(os, g);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open " + path);
  return read_edge_list(is);
}

}  // namespace rlab
