#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace rlab {

// --- degree sequences -----------------------------------------------------

struct DegreeSequence {
  std::vector<int> degrees;

  int n() const { return static_cast<int>(degrees.size()); }
  long long sum() const { return std::accumulate(degrees.begin(), degrees.end(), 0LL); }
  /// d-bar, the average degree.
  double average() const { return degrees.empty() ? 0.0 : static_cast<double>(sum()) / n(); }
  /// D, the maximum degree.
  int max() const { return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end()); }

  static DegreeSequence regular(int n, int d) { return {std::vector<int>(static_cast<std::size_t>(n), d)}; }
};

/// Erdős–Gallai test.
inline bool is_graphic(const std::vector<int>& degrees) {
  std::vector<long long> d(degrees.begin(), degrees.end());
  const long long n = static_cast<long long>(d.size());
  for (long long x : d)
    if (x < 0 || x >= n) return false;
  if (std::accumulate(d.begin(), d.end(), 0LL) % 2) return false;
  std::sort(d.begin(), d.end(), std::greater<>());
  long long lhs = 0;
  for (long long k = 1; k <= n; ++k) {
    lhs += d[k - 1];
    long long rhs = k * (k - 1);
    for (long long i = k; i < n; ++i) rhs += std::min(d[i], k);
    if (lhs > rhs) return false;
  }
  return true;
}

inline void validate(const DegreeSequence& ds) {
  if (ds.degrees.empty()) throw ValidationError("empty degree sequence");
  if (ds.sum() % 2) throw ValidationError("degree sum is odd");
  if (ds.max() >= ds.n() && ds.max() > 0) throw ValidationError("maximum degree must be below n");
  if (!is_graphic(ds.degrees)) throw ValidationError("degree sequence is not graphic");
}

// --- analytic evaluators ----------------------------------------------------

struct McKay {
  double gamma = 0;
  double nu = 0;
  double window = 1;  ///< exp(-gamma - gamma^2 - nu), up to the exp(o(1)) slack
  double slack = 1;
};

/// McKay's overlap quantities for a degree sequence and a forbidden graph g0.
inline McKay mckay_quantities(const DegreeSequence& ds, const Graph& g0) {
  const double total = static_cast<double>(ds.sum());
  if (total <= 0) throw ValidationError("empty degree sum");
  if (g0.n() != ds.n()) throw ValidationError("g0 vertex count differs from sequence length");
  if (g0.max_degree() > 64) throw ValidationError("g0 maximum degree above 64");
  McKay r;
  for (int d : ds.degrees) r.gamma += 0.5 * d * (d - 1);
  r.gamma /= total;
  for (auto [u, v] : g0.edges())
    r.nu += static_cast<double>(ds.degrees[u]) * ds.degrees[v];
  r.nu /= total;
  r.window = std::exp(-r.gamma - r.gamma * r.gamma - r.nu);
  return r;
}

struct EdgeProbBounds {
  double lower = 0;
  double upper = 1;
  bool lower_clamped = false;  ///< printed lower numerator was negative
  bool degenerate = false;     ///< a denominator was nonpositive; bounds are meaningless
  double slack = 1;            ///< the (1 - o(1)) factor, left for the caller
};

/// Switching bounds on Pr[uv is an edge] in the uniform graph with sequence ds.
inline EdgeProbBounds edge_prob_bounds(const DegreeSequence& ds, int u, int v) {
  if (u == v) throw ValidationError("u and v must differ");
  if (u < 0 || v < 0 || u >= ds.n() || v >= ds.n()) throw ValidationError("vertex out of range");
  const double du = ds.degrees[u], dv = ds.degrees[v];
  const double dn = static_cast<double>(ds.sum());
  const double D = ds.max();
  EdgeProbBounds b;
  const double lower_den = dn + du * dv - 2 * du - 2 * dv;
  const double upper_den = dn + du * dv - (D + 1) * (du + dv);
  if (lower_den <= 0 || upper_den <= 0) {
    b.degenerate = true;
    b.lower = 0;
    b.upper = 1;
    return b;
  }
  const double lower_num = du * dv - du - dv;
  if (lower_num < 0) {
    b.lower = 0;
    b.lower_clamped = true;
  } else {
    b.lower = lower_num / lower_den;
  }
  b.upper = du * dv / upper_den;
  return b;
}

struct ContainmentBound {
  double value = 1;
  bool vacuous = false;        ///< value >= 1
  bool valid_regime = true;    ///< m <= (1 - eps) n d / 2
};

/// (Cd/n)^m bound on Pr[E0 subset of E(G(n,d))] for |E0| = m.
inline ContainmentBound containment_bound(int n, int d, long long m, double C, double eps = 0.0) {
  if (n <= 0 || d < 0 || m < 0 || C <= 0) throw ValidationError("invalid containment parameters");
  ContainmentBound r;
  r.valid_regime = static_cast<double>(m) <= (1.0 - eps) * n * d / 2.0;
  const double base = C * d / n;
  r.value = std::pow(base, static_cast<double>(m));
  r.vacuous = base >= 1.0 && m > 0;
  return r;
}

enum class Tail { Upper, Lower, TwoSided };

/// Chernoff bounds for X ~ Bin(n, p) at relative deviation delta.
inline double chernoff_tail(long long n, double p, double delta, Tail which) {
  if (delta <= 0) throw ValidationError("delta must be positive");
  const double np = static_cast<double>(n) * p;
  const double phi = (1 + delta) * std::log1p(delta) - delta;
  switch (which) {
    case Tail::Upper:
      return std::exp(-np * phi);
    case Tail::Lower:
      return std::exp(-delta * delta * np / 2);
    case Tail::TwoSided:
      return 2 * std::exp(-np * phi);
  }
  return 1;
}

// --- generators -------------------------------------------------------------

enum class GenMethod {
  Auto,    ///< Exact when the estimated acceptance rate allows it, else Approx
  Exact,   ///< pairing model with full rejection (uniform)
  Approx,  ///< pairing with switch repair, then a switch chain (approximately uniform)
};

struct GenInfo {
  std::string method;
  long long attempts = 0;
};

inline constexpr long long kRejectionCap = 1'000'000;
inline constexpr double kExactAcceptanceFloor = 1e-4;
inline constexpr int kDefaultSwitchSweeps = 10;

using EdgeSet = std::unordered_set<std::uint64_t>;

inline EdgeSet edge_set_of(const Graph& g) {
  EdgeSet s;
  s.reserve(g.m() * 2 + 1);
  for (auto [u, v] : g.edges()) s.insert(edge_key(u, v));
  return s;
}

namespace detail {

inline std::vector<int> stub_list(const std::vector<int>& degrees) {
  std::vector<int> stubs;
  for (int v = 0; v < static_cast<int>(degrees.size()); ++v)
    for (int i = 0; i < degrees[v]; ++i) stubs.push_back(v);
  return stubs;
}

/// One uniform pairing drawn pair by pair; stops at the first loop, repeated pair or
/// forbidden pair. `seen` is an n*n scratch matrix (empty for large n).
inline bool pairing_once(std::vector<int>& stubs, Rng& rng, const Graph* forbidden,
                         std::vector<Edge>& out, std::vector<char>& seen, int n) {
  out.clear();
  const std::size_t s = stubs.size();
  bool ok = true;
  for (std::size_t i = 0; i + 1 < s; i += 2) {
    std::size_t j = std::uniform_int_distribution<std::size_t>(i + 1, s - 1)(rng);
    std::swap(stubs[i + 1], stubs[j]);
    int a = stubs[i], b = stubs[i + 1];
    if (a == b || (forbidden && forbidden->has_edge(a, b))) {
      ok = false;
      break;
    }
    if (!seen.empty()) {
      char& cell = seen[static_cast<std::size_t>(std::min(a, b)) * n + std::max(a, b)];
      if (cell) {
        ok = false;
        break;
      }
      cell = 1;
    }
    out.push_back(canon(a, b));
  }
  if (!seen.empty())
    for (auto [a, b] : out) seen[static_cast<std::size_t>(a) * n + b] = 0;
  if (!ok) return false;
  if (seen.empty()) {
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) return false;
  }
  return true;
}

inline Graph pairing_exact(int n, const std::vector<int>& degrees, Rng& rng, const Graph* forbidden,
                           long long cap, long long* attempts) {
  auto stubs = stub_list(degrees);
  std::vector<Edge> es;
  std::vector<char> seen;
  if (n <= 2048) seen.assign(static_cast<std::size_t>(n) * n, 0);
  for (long long t = 1; t <= cap; ++t) {
    if (pairing_once(stubs, rng, forbidden, es, seen, n)) {
      if (attempts) *attempts = t;
      return Graph(n, es);
    }
  }
  throw RuntimeFailure("rejection cap exceeded: degree too large for rejection sampling");
}

/// Random pairing, switch-based repair of bad pairs, then `sweeps * m` switch attempts.
class SwitchSampler {
 public:
  SwitchSampler(int n, const std::vector<int>& degrees, const EdgeSet* forbidden, Rng& rng)
      : n_(n), degrees_(degrees), forbidden_(forbidden), rng_(rng) {}

  Graph run(int sweeps, long long* attempts) {
    for (int restart = 1; restart <= 50; ++restart) {
      if (attempts) *attempts = restart;
      if (!initial()) continue;
      mix(static_cast<long long>(sweeps) * static_cast<long long>(edges_.size()));
      return Graph(n_, edges_);
    }
    throw RuntimeFailure("switch repair could not realise the degree sequence");
  }

 private:
  bool legal(int a, int b) const {
    if (a == b) return false;
    auto k = edge_key(a, b);
    if (present_.count(k)) return false;
    return !(forbidden_ && forbidden_->count(k));
  }

  void put(int a, int b) {
    present_.insert(edge_key(a, b));
    edges_.push_back(canon(a, b));
  }

  bool initial() {
    edges_.clear();
    present_.clear();
    auto stubs = stub_list(degrees_);
    present_.reserve(stubs.size() + 1);
    std::shuffle(stubs.begin(), stubs.end(), rng_);
    std::vector<Edge> bad;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int a = stubs[i], b = stubs[i + 1];
      if (legal(a, b))
        put(a, b);
      else
        bad.emplace_back(a, b);
    }
    for (auto [a, b] : bad) {
      bool fixed = false;
      for (int t = 0; t < 20000 && !fixed; ++t) {
        if (edges_.empty()) break;
        std::size_t idx = std::uniform_int_distribution<std::size_t>(0, edges_.size() - 1)(rng_);
        auto [x, y] = edges_[idx];
        if (coin(rng_)) std::swap(x, y);
        // replace xy by ax and by
        if (a == x || b == y) continue;
        if (edge_key(a, x) == edge_key(b, y)) continue;
        present_.erase(edge_key(x, y));
        if (legal(a, x) && legal(b, y)) {
          edges_[idx] = canon(a, x);
          present_.insert(edge_key(a, x));
          put(b, y);
          fixed = true;
        } else {
          present_.insert(edge_key(x, y));
        }
      }
      if (!fixed) return false;
    }
    return true;
  }

  void mix(long long steps) {
    const std::size_t m = edges_.size();
    if (m < 2) return;
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (long long s = 0; s < steps; ++s) {
      std::size_t i = pick(rng_), j = pick(rng_);
      if (i == j) continue;
      auto [a, b] = edges_[i];
      auto [c, d] = edges_[j];
      if (coin(rng_)) std::swap(c, d);
      if (a == c || a == d || b == c || b == d) continue;
      if (!legal(a, c) || !legal(b, d)) continue;
      present_.erase(edge_key(a, b));
      present_.erase(edge_key(c, d));
      present_.insert(edge_key(a, c));
      present_.insert(edge_key(b, d));
      edges_[i] = canon(a, c);
      edges_[j] = canon(b, d);
    }
  }

  int n_;
  const std::vector<int>& degrees_;
  const EdgeSet* forbidden_;
  Rng& rng_;
  std::vector<Edge> edges_;
  EdgeSet present_;
};

inline double exact_acceptance_estimate(const DegreeSequence& ds, const Graph* forbidden) {
  if (ds.sum() == 0) return 1.0;
  return mckay_quantities(ds, forbidden ? *forbidden : Graph(ds.n())).window;
}

inline Graph generate(const DegreeSequence& ds, std::uint64_t seed, GenMethod method,
                      const Graph* forbidden, GenInfo* info, std::string_view label) {
  Rng rng = stream(seed, label);
  GenInfo local;
  if (method == GenMethod::Auto) {
    bool small_forbidden = !forbidden || forbidden->max_degree() <= 64;
    method = small_forbidden && exact_acceptance_estimate(ds, forbidden) >= kExactAcceptanceFloor
                 ? GenMethod::Exact
                 : GenMethod::Approx;
  }
  Graph g;
  if (method == GenMethod::Exact) {
    local.method = "pairing-rejection";
    g = pairing_exact(ds.n(), ds.degrees, rng, forbidden, kRejectionCap, &local.attempts);
  } else {
    local.method = "pairing-switch-chain";
    EdgeSet fset;
    if (forbidden) fset = edge_set_of(*forbidden);
    SwitchSampler s(ds.n(), ds.degrees, forbidden ? &fset : nullptr, rng);
    g = s.run(kDefaultSwitchSweeps, &local.attempts);
  }
  if (info) *info = local;
  return g;
}

}  // namespace detail

/// Random simple d-regular graph on [n].
inline Graph gen_regular(int n, int d, std::uint64_t seed, GenMethod method = GenMethod::Auto,
                         GenInfo* info = nullptr) {
  if (n <= 0 || d < 0 || d >= n || (static_cast<long long>(n) * d) % 2)
    throw ValidationError("infeasible (n, d) for a regular graph");
  return detail::generate(DegreeSequence::regular(n, d), seed, method, nullptr, info, "regular");
}

/// Random graph with a prescribed degree sequence.
inline Graph gen_degree_sequence(const DegreeSequence& ds, std::uint64_t seed,
                                 GenMethod method = GenMethod::Auto, GenInfo* info = nullptr) {
  validate(ds);
  if (ds.max() > 64) throw ValidationError("maximum degree above 64");
  return detail::generate(ds, seed, method, nullptr, info, "degseq");
}

/// Random regular graph edge-disjoint from `avoid`.
inline Graph gen_regular_avoiding(int n, int d, const Graph& avoid, std::uint64_t seed,
                                  GenMethod method = GenMethod::Auto, GenInfo* info = nullptr) {
  if (n <= 0 || d < 0 || d >= n || (static_cast<long long>(n) * d) % 2)
    throw ValidationError("infeasible (n, d) for a regular graph");
  if (avoid.n() != n) throw ValidationError("vertex sets differ");
  return detail::generate(DegreeSequence::regular(n, d), seed, method, &avoid, info, "avoiding");
}

struct UnionSample {
  Graph g1, g2, g;
  GenInfo info;
};

/// G1 + G2 conditioned edge-disjoint: G2 resampled until it avoids G1.
inline UnionSample gen_union(int n, int d1, int d2, std::uint64_t seed,
                             GenMethod method = GenMethod::Auto) {
  if (d1 < 3 || d2 < 3) throw ValidationError("union mode needs d1, d2 >= 3");
  if ((static_cast<long long>(n) * d1) % 2 || (static_cast<long long>(n) * d2) % 2)
    throw ValidationError("n*d1 and n*d2 must be even");
  if (d1 >= n || d2 >= n) throw ValidationError("d1 and d2 must be below n");
  UnionSample s;
  s.g1 = gen_regular(n, d1, derive_seed(seed, "union-g1"), method);
  s.g2 = gen_regular_avoiding(n, d2, s.g1, derive_seed(seed, "union-g2"), method, &s.info);
  s.g = graph_union(s.g1, s.g2);
  return s;
}

struct TwoHamSample {
  std::vector<int> order1, order2;  ///< vertex orders of the two cycles
  Graph c1, c2, g;
  long long attempts = 0;
};

inline Graph cycle_from_order(int n, const std::vector<int>& order) {
  std::vector<Edge> es;
  for (std::size_t i = 0; i < order.size(); ++i)
    es.push_back(canon(order[i], order[(i + 1) % order.size()]));
  return Graph(n, es);
}

/// Two uniform Hamilton cycles on [n], resampled until edge-disjoint.
inline TwoHamSample gen_two_hamilton_cycles(int n, std::uint64_t seed, long long cap = 100000) {
  if (n < 5) throw ValidationError("two Hamilton cycles need n >= 5");
  Rng rng = stream(seed, "two-ham");
  TwoHamSample s;
  s.order1.resize(static_cast<std::size_t>(n));
  std::iota(s.order1.begin(), s.order1.end(), 0);
  std::shuffle(s.order1.begin(), s.order1.end(), rng);
  s.c1 = cycle_from_order(n, s.order1);
  s.order2 = s.order1;
  for (long long t = 1; t <= cap; ++t) {
    std::shuffle(s.order2.begin(), s.order2.end(), rng);
    bool disjoint = true;
    for (int i = 0; i < n && disjoint; ++i)
      disjoint = !s.c1.has_edge(s.order2[i], s.order2[(i + 1) % n]);
    if (disjoint) {
      s.attempts = t;
      s.c2 = cycle_from_order(n, s.order2);
      s.g = graph_union(s.c1, s.c2);
      return s;
    }
  }
  throw RuntimeFailure("two-Hamilton-cycle resample cap exceeded");
}

/// Maker board with its decomposition: C1 + C2 + G12 form G1, G2 is the second part.
struct BoardSample {
  TwoHamSample cycles;
  Graph g12, g1, g2, g;
};

/// Union in strategy mode: G1 = C1 + C2 + G(n, d1 - 4) disjoint, then G2 avoiding G1.
inline BoardSample gen_union_strategy(int n, int d1, int d2, std::uint64_t seed,
                                      GenMethod method = GenMethod::Auto) {
  if (d1 < 4 || d2 < 3) throw ValidationError("strategy mode needs d1 >= 4 and d2 >= 3");
  if ((static_cast<long long>(n) * d2) % 2 || (static_cast<long long>(n) * d1) % 2)
    throw ValidationError("n*d1 and n*d2 must be even");
  if (d1 + d2 >= n) throw ValidationError("d1 + d2 must be below n");
  BoardSample b;
  b.cycles = gen_two_hamilton_cycles(n, derive_seed(seed, "board-cycles"));
  b.g12 = d1 > 4 ? gen_regular_avoiding(n, d1 - 4, b.cycles.g, derive_seed(seed, "board-g12"), method)
                 : Graph(n);
  b.g1 = graph_union(b.cycles.g, b.g12);
  b.g2 = gen_regular_avoiding(n, d2, b.g1, derive_seed(seed, "board-g2"), method);
  b.g = graph_union(b.g1, b.g2);
  return b;
}

/// G(n, p).
inline Graph gen_binomial(int n, double p, std::uint64_t seed) {
  if (n < 0 || !(p >= 0 && p <= 1)) throw ValidationError("gnp needs n >= 0 and 0 <= p <= 1");
  Rng rng = stream(seed, "gnp");
  std::bernoulli_distribution keep(p);
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (keep(rng)) es.emplace_back(u, v);
  return Graph(n, es);
}

}  // namespace rlab
