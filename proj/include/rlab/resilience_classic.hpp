#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "flow.hpp"
#include "graph.hpp"
#include "matching.hpp"
#include "rng.hpp"

namespace rlab {

struct AttackReport {
  Graph h;
  int delta_h = 0;
  std::string goal;       ///< disconnect | kill-k-edge-conn | kill-k-vertex-conn | kill-pm | kill-ham
  bool success = false;   ///< set only after an exact decider confirmed the loss
  bool presumed_dead = false;  ///< heuristic search failed to find the property; never counted as success
  long long rounds = 0;   ///< resampling rounds
  double bound = 0;       ///< printed bound on delta_h, when the attack has one
  bool vacuous = false;   ///< bound >= d
  bool bound_met = true;  ///< delta_h <= bound
  std::string decider;
  std::uint64_t transcript_hash = 0;
  Partition partition;             ///< partition_attack / matching_attack sides
  std::vector<int> witness_set;    ///< matching_attack: the independent majority set U
};

struct Certificate {
  std::string property;
  int tolerated_delta = 0;
  double lambda = 0;
  bool lambda_verified = false;
  bool density_checked = false;  ///< rho(G, tau) <= 1 established by exact search
  double density_tau = 0;
  double density_ratio = 0;
  bool valid = false;
  bool conditional = false;      ///< hypotheses could not be verified, only assumed
  std::string reason;
};

inline std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(g.n());
  for (auto [u, v] : g.edges()) h = splitmix64(h ^ edge_key(u, v));
  return h;
}

inline std::uint64_t decider_hash(const std::string& decider, long long value, const Graph& g) {
  return splitmix64(graph_hash(g) ^ fnv1a(decider) ^ static_cast<std::uint64_t>(value));
}

namespace detail {

inline int require_regular(const Graph& g) {
  int d = g.regular_degree();
  if (d < 0) throw ValidationError("graph must be regular");
  return d;
}

inline Graph crossing_edges(const Graph& g, const std::vector<int>& side) {
  std::vector<Edge> es;
  for (auto [u, v] : g.edges())
    if (side[u] != side[v]) es.emplace_back(u, v);
  return Graph(g.n(), es);
}

}  // namespace detail

/// Removes d - k + 1 edges at vertex 0, leaving a vertex of degree k - 1.
inline AttackReport trivial_attack(const Graph& g, int k) {
  int d = detail::require_regular(g);
  if (k < 1 || k > d) throw ValidationError("k must satisfy 1 <= k <= d");
  AttackReport r;
  r.goal = "kill-k-edge-conn";
  std::vector<Edge> es;
  const auto& nb = g.neighbors(0);
  for (int i = 0; i < d - k + 1; ++i) es.push_back(canon(0, nb[i]));
  r.h = Graph(g.n(), es);
  r.delta_h = r.h.max_degree();
  r.bound = d - k + 1;
  auto rest = remove_subgraph(g, r.h).graph;
  int ec = edge_connectivity(rest);
  int vc = vertex_connectivity(rest);
  r.decider = "edge+vertex-connectivity";
  r.success = ec < k && vc < k;
  r.transcript_hash = decider_hash(r.decider, ec * 1000003LL + vc, rest);
  return r;
}

inline double partition_bound(int d) { return d / 2.0 + 4.0 * std::sqrt(d * std::log(static_cast<double>(d))); }

/// Moser–Tardos search for a partition whose crossing degrees are all <= bound; the
/// crossing edges are removed. `bound < 0` selects the printed d/2 + 4 sqrt(d ln d).
inline AttackReport partition_attack(const Graph& g, std::uint64_t seed, double bound = -1,
                                     long long round_cap = -1) {
  int d = detail::require_regular(g);
  const int n = g.n();
  if (n < 2) throw ValidationError("partition attack needs n >= 2");
  AttackReport r;
  r.goal = "disconnect";
  const bool printed = bound < 0;
  r.bound = printed ? partition_bound(std::max(d, 1)) : bound;
  r.vacuous = r.bound >= d;
  if (round_cap < 0) round_cap = 10000LL * n;
  Rng rng = stream(seed, "partition-attack");

  std::vector<int> side(static_cast<std::size_t>(n));
  std::vector<int> cross(static_cast<std::size_t>(n), 0);
  auto recount = [&](int v) {
    int c = 0;
    for (int y : g.neighbors(v)) c += side[y] != side[v];
    cross[v] = c;
  };
  auto both_sides = [&]() {
    int ones = static_cast<int>(std::count(side.begin(), side.end(), 1));
    return ones > 0 && ones < n;
  };
  do {
    for (auto& s : side) s = coin(rng) ? 1 : 2;
  } while (!both_sides());
  for (int v = 0; v < n; ++v) recount(v);

  std::vector<char> touched(static_cast<std::size_t>(n), 0);
  long long rounds = 0;
  bool done = false;
  int scan = 0;
  while (!done) {
    int bad = -1;
    for (int i = 0; i < n; ++i) {
      int v = (scan + i) % n;
      if (cross[v] > r.bound) {
        bad = v;
        break;
      }
    }
    if (bad < 0) {
      if (both_sides()) {
        done = true;
        break;
      }
      bad = uniform_int(rng, 0, n - 1);
    }
    if (rounds >= round_cap) break;
    ++rounds;
    scan = bad;
    std::vector<int> resampled{bad};
    for (int y : g.neighbors(bad)) resampled.push_back(y);
    for (int v : resampled) side[v] = coin(rng) ? 1 : 2;
    std::vector<int> affected;
    for (int v : resampled) {
      if (!touched[v]) touched[v] = 1, affected.push_back(v);
      for (int y : g.neighbors(v))
        if (!touched[y]) touched[y] = 1, affected.push_back(y);
    }
    for (int v : affected) {
      recount(v);
      touched[v] = 0;
    }
  }
  r.rounds = rounds;
  r.partition.side = side;
  r.h = detail::crossing_edges(g, side);
  r.delta_h = r.h.max_degree();
  r.bound_met = r.delta_h <= r.bound;
  if (!done) {
    r.decider = "none:round-cap";
    if (printed) throw RuntimeFailure("partition attack exceeded its resampling cap");
    return r;
  }
  auto rest = remove_subgraph(g, r.h).graph;
  int comps = 0;
  components(rest, &comps);
  r.decider = "components";
  r.success = comps >= 2;
  r.transcript_hash = decider_hash(r.decider, comps, rest);
  return r;
}

enum class ConnKind { Edge, Vertex };

inline constexpr int kVertexCertificateD0 = 50;

/// Deterministic connectivity guarantee for an (n, d, lambda)-graph.
inline Certificate conn_certificate(const Graph& g, double lam, ConnKind kind, double epsilon,
                                    bool lambda_verified = true, int d0 = kVertexCertificateD0) {
  int d = detail::require_regular(g);
  const double n = g.n();
  Certificate c;
  c.lambda = lam;
  c.lambda_verified = lambda_verified;
  if (kind == ConnKind::Edge) {
    c.property = "edge-connectivity";
    c.tolerated_delta = static_cast<int>(std::floor((d - lam) / 2.0 * (1.0 - 4.0 / n)));
    bool hyp = lam <= d * (n - 4) / (3 * n - 4);
    c.valid = hyp && lambda_verified && c.tolerated_delta >= 0;
    if (!hyp) c.reason = "lambda exceeds d(n-4)/(3n-4)";
    else if (!lambda_verified) c.reason = "lambda not verified";
    else if (c.tolerated_delta < 0) c.reason = "negative tolerance";
    c.conditional = hyp && !lambda_verified;
    return c;
  }
  if (epsilon <= 0) throw ValidationError("epsilon must be positive");
  c.property = "vertex-connectivity";
  c.tolerated_delta = static_cast<int>(std::floor((d - lam) / 2.0 - epsilon));
  c.density_tau = d + static_cast<double>(d) * d / epsilon;
  int tau = static_cast<int>(std::floor(c.density_tau));
  bool density_ok = false;
  if (tau <= 20 && tau <= g.n()) {
    auto rep = density_rho(g, tau);
    c.density_ratio = rep.ratio();
    c.density_checked = rep.exact;
    density_ok = rep.exact && rep.edges <= rep.size;
    if (rep.exact && !density_ok) c.reason = "rho(G, d + d^2/eps) > 1";
  } else {
    c.reason = "density hypothesis beyond exact range";
  }
  bool d_ok = d >= d0;
  if (!d_ok && c.reason.empty()) c.reason = "d below calibrated d0";
  c.valid = density_ok && d_ok && lambda_verified && c.tolerated_delta >= 0;
  if (c.valid) c.reason.clear();
  else if (c.tolerated_delta < 0 && c.reason.empty()) c.reason = "negative tolerance";
  c.conditional = !c.valid && c.tolerated_delta >= 0 &&
                  (!c.density_checked || !d_ok || !lambda_verified) &&
                  c.reason != "rho(G, d + d^2/eps) > 1";
  return c;
}

struct GoodPartition {
  Partition partition;
  double bound = 0;  ///< delta/2 - 5 sqrt(Delta ln Delta)
  bool vacuous = false;
  int min_cross = 0;
  long long rounds = 0;
};

inline double good_partition_bound(int delta, int Delta) {
  return delta / 2.0 - 5.0 * std::sqrt(Delta * std::log(static_cast<double>(Delta)));
}

/// Balanced partition from paired coin flips with every crossing degree above the bound.
inline GoodPartition good_partition(const Graph& g, std::uint64_t seed) {
  const int n = g.n();
  if (n % 2) throw ValidationError("good partition needs an even vertex count");
  const int Delta = g.max_degree();
  if (Delta < 3) throw ValidationError("good partition needs maximum degree >= 3");
  GoodPartition out;
  out.bound = good_partition_bound(g.min_degree(), Delta);
  out.vacuous = out.bound <= 0;
  Rng rng = stream(seed, "good-partition");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> pair_of(static_cast<std::size_t>(n)), partner(static_cast<std::size_t>(n));
  for (int i = 0; i < n; i += 2) {
    pair_of[perm[i]] = pair_of[perm[i + 1]] = i / 2;
    partner[perm[i]] = perm[i + 1];
    partner[perm[i + 1]] = perm[i];
  }
  std::vector<int> side(static_cast<std::size_t>(n));
  auto flip_pair = [&](int v) {
    int a = v, b = partner[v];
    bool c = coin(rng);
    side[a] = c ? 1 : 2;
    side[b] = c ? 2 : 1;
  };
  for (int i = 0; i < n; i += 2) flip_pair(perm[i]);
  auto crossing = [&](int v) {
    int c = 0;
    for (int y : g.neighbors(v)) c += side[y] != side[v];
    return c;
  };
  const long long cap = 10000LL * n;
  while (true) {
    int bad = -1;
    for (int v = 0; v < n && bad < 0; ++v)
      if (crossing(v) < out.bound) bad = v;
    if (bad < 0) break;
    if (out.rounds++ >= cap) throw RuntimeFailure("good partition exceeded its resampling cap");
    flip_pair(bad);
    for (int y : g.neighbors(bad)) flip_pair(y);
  }
  out.partition.side = side;
  out.min_cross = n;
  for (int v = 0; v < n; ++v) out.min_cross = std::min(out.min_cross, crossing(v));
  return out;
}

inline double matching_attack_bound(int d) {
  return d / 2.0 + 2.0 * std::sqrt(d * std::log(static_cast<double>(d))) + 2.0;
}

/// Builds U with |U| = n/2 + 1 and small Delta(G[U]); removing G[U] leaves U independent,
/// so no perfect matching survives.
inline AttackReport matching_attack(const Graph& g, std::uint64_t seed) {
  int d = detail::require_regular(g);
  const int n = g.n();
  if (n % 2 || n < 2) throw ValidationError("matching attack needs an even vertex count");
  if (d < 2) throw ValidationError("matching attack needs d >= 2");
  AttackReport r;
  r.goal = "kill-pm";
  r.bound = matching_attack_bound(d);
  r.vacuous = r.bound >= d;
  const double dev = 2.0 * std::sqrt(d * std::log(static_cast<double>(d)));

  Rng rng = stream(seed, "matching-attack");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> partner(static_cast<std::size_t>(n));
  for (int i = 0; i < n; i += 2) {
    partner[perm[i]] = perm[i + 1];
    partner[perm[i + 1]] = perm[i];
  }
  std::vector<int> side(static_cast<std::size_t>(n));
  auto flip_pair = [&](int v) {
    bool c = coin(rng);
    side[v] = c ? 1 : 2;
    side[partner[v]] = c ? 2 : 1;
  };
  for (int i = 0; i < n; i += 2) flip_pair(perm[i]);
  // H = G'_{V1,V2} where G' drops the pair edges.
  auto violated = [&](int v) {
    int dg = 0, dh = 0;
    for (int y : g.neighbors(v)) {
      if (y == partner[v]) continue;
      ++dg;
      dh += side[y] != side[v];
    }
    return std::abs(dh - dg / 2.0) > dev;
  };
  const long long cap = 10000LL * n;
  while (true) {
    int bad = -1;
    for (int v = 0; v < n && bad < 0; ++v)
      if (violated(v)) bad = v;
    if (bad < 0) break;
    if (r.rounds++ >= cap) throw RuntimeFailure("matching attack exceeded its resampling cap");
    flip_pair(bad);
    for (int y : g.neighbors(bad)) flip_pair(y);
  }
  // U = V1 plus the V2 vertex with fewest neighbours in V1.
  int extra = -1, extra_deg = n + 1;
  for (int v = 0; v < n; ++v) {
    if (side[v] != 2) continue;
    int c = 0;
    for (int y : g.neighbors(v)) c += side[y] == 1;
    if (c < extra_deg) extra = v, extra_deg = c;
  }
  std::vector<char> in_u(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    if (side[v] == 1) {
      in_u[v] = 1;
      r.witness_set.push_back(v);
    }
  in_u[extra] = 1;
  r.witness_set.push_back(extra);
  std::sort(r.witness_set.begin(), r.witness_set.end());
  r.partition.side = side;
  r.h = induced_on(g, in_u);
  r.delta_h = r.h.max_degree();
  r.bound_met = r.delta_h <= r.bound;
  auto rest = remove_subgraph(g, r.h).graph;
  auto pm = perfect_matching(rest);
  r.decider = "blossom-matching";
  r.success = !pm.perfect;
  r.transcript_hash = decider_hash(r.decider, pm.size, rest);
  return r;
}

/// Perfect-matching guarantee: tolerated = floor(d/2 - 10 sqrt(d ln d) - 2 lambda).
inline Certificate matching_certificate(const Graph& g, double lam, bool lambda_verified = true) {
  int d = detail::require_regular(g);
  Certificate c;
  c.property = "perfect-matching";
  c.lambda = lam;
  c.lambda_verified = lambda_verified;
  double t = d / 2.0 - 10.0 * std::sqrt(d * std::log(static_cast<double>(std::max(d, 1)))) - 2.0 * lam;
  c.tolerated_delta = static_cast<int>(std::floor(t));
  c.valid = c.tolerated_delta > 0 && lambda_verified && g.n() % 2 == 0;
  if (c.tolerated_delta <= 0) c.reason = "tolerance not positive";
  else if (g.n() % 2) c.reason = "odd vertex count";
  else if (!lambda_verified) c.reason = "lambda not verified";
  c.conditional = c.tolerated_delta > 0 && !lambda_verified;
  return c;
}

}  // namespace rlab
