#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"

namespace rlab {

struct SpectralReport {
  double lambda1 = 0;
  double lambda2 = 0;
  double lambdan = 0;
  double lambda = 0;  ///< max(|lambda2|, |lambdan|)
  std::string method;
  double residual = 0;
  int iterations = 0;
};

inline constexpr int kDenseSpectralLimit = 2000;

namespace detail {

inline SpectralReport dense_spectrum(const Graph& g) {
  const int n = g.n();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) a(u, v) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw RuntimeFailure("dense eigensolver failed");
  const auto& ev = es.eigenvalues();
  SpectralReport r;
  r.method = "dense";
  r.lambda1 = ev(n - 1);
  r.lambda2 = n >= 2 ? ev(n - 2) : ev(0);
  r.lambdan = ev(0);
  r.residual = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1, g.max_degree()) * n;
  return r;
}

/// Lanczos with full reorthogonalisation on the complement of the all-ones vector.
inline SpectralReport lanczos_spectrum(const Graph& g, double tol, int max_iter) {
  const int n = g.n();
  const double d = g.regular_degree();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::VectorXd ones = Eigen::VectorXd::Constant(n, inv_sqrt_n);

  auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    for (int u = 0; u < n; ++u) {
      double s = 0;
      for (int v : g.neighbors(u)) s += x(v);
      y(u) = s;
    }
  };

  Rng rng = stream(0x5eed, "lanczos");
  std::normal_distribution<double> gauss;
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q(i) = gauss(rng);
  q -= ones * ones.dot(q);
  q.normalize();

  const int cap = std::min(max_iter, n - 1);
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;
  Eigen::VectorXd w(n);
  SpectralReport r;
  r.method = "lanczos";
  r.lambda1 = d;
  for (int k = 0; k < cap; ++k) {
    basis.push_back(q);
    apply(q, w);
    double a = q.dot(w);
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      w -= ones * ones.dot(w);
      for (const auto& b : basis) w -= b * b.dot(w);
    }
    double bnorm = w.norm();
    const int m = static_cast<int>(alpha.size());
    bool check = bnorm < 1e-12 || m % 8 == 0 || m == cap;
    if (check) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const auto& ev = es.eigenvalues();
      const auto& vec = es.eigenvectors();
      double res_lo = std::abs(bnorm * vec(m - 1, 0));
      double res_hi = std::abs(bnorm * vec(m - 1, m - 1));
      r.lambdan = ev(0);
      r.lambda2 = ev(m - 1);
      r.residual = std::max(res_lo, res_hi);
      r.iterations = m;
      if (r.residual <= tol || bnorm < 1e-12) return r;
    }
    beta.push_back(bnorm);
    q = w / bnorm;
  }
  if (r.residual <= tol) return r;
  throw RuntimeFailure("Lanczos iteration did not converge within the iteration cap");
}

}  // namespace detail

/// lambda(G) = max(|lambda_2|, |lambda_n|) for a regular graph.
inline SpectralReport lambda(const Graph& g, double tol = 1e-8, int max_iter = 1500) {
  if (tol <= 0) throw ValidationError("tolerance must be positive");
  if (g.n() == 0) throw ValidationError("empty graph");
  int d = g.regular_degree();
  if (d < 0) throw ValidationError("lambda() needs a regular graph");
  SpectralReport r = (g.n() <= kDenseSpectralLimit || g.n() <= 2)
                         ? detail::dense_spectrum(g)
                         : detail::lanczos_spectrum(g, tol, max_iter);
  if (g.n() == 1) {
    r.lambda2 = r.lambdan = 0;
  }
  r.lambda = std::max(std::abs(r.lambda2), std::abs(r.lambdan));
  return r;
}

struct BoundCheck {
  double actual = 0;  ///< observed quantity (deviation for the mixing lemma)
  double bound = 0;
  bool ok = true;
};

inline constexpr double kBoundSlack = 1e-9;

/// Expander mixing lemma for disjoint U, W.
inline BoundCheck mixing_check(const Graph& g, double lam, const std::vector<int>& u,
                               const std::vector<int>& w) {
  if (u.empty() || w.empty()) throw ValidationError("U and W must be nonempty");
  auto mu = to_mask(g.n(), u);
  for (int x : w)
    if (mu[x]) throw ValidationError("U and W overlap");
  const double n = g.n(), d = g.regular_degree();
  const double su = static_cast<double>(u.size()), sw = static_cast<double>(w.size());
  BoundCheck c;
  c.actual = std::abs(static_cast<double>(edges_between(g, u, w)) - su * sw * d / n);
  c.bound = lam / n * std::sqrt(su * (n - su) * sw * (n - sw));
  c.ok = c.actual <= c.bound + kBoundSlack * (1 + c.bound);
  return c;
}

/// e(U, V - U) >= (d - lambda)|U|(n - |U|)/n.
inline BoundCheck boundary_bound(const Graph& g, double lam, const std::vector<int>& u) {
  auto mu = to_mask(g.n(), u);
  std::vector<int> rest;
  for (int v = 0; v < g.n(); ++v)
    if (!mu[v]) rest.push_back(v);
  const double n = g.n(), d = g.regular_degree(), s = static_cast<double>(u.size());
  BoundCheck c;
  c.actual = rest.empty() ? 0.0 : static_cast<double>(edges_between(g, u, rest));
  c.bound = (d - lam) * s * (n - s) / n;
  c.ok = c.actual + kBoundSlack * (1 + std::abs(c.bound)) >= c.bound;
  return c;
}

/// e(U) <= (d/n) C(|U|,2) + (lambda/n)|U|(n - |U|/2).
inline BoundCheck density_bound(const Graph& g, double lam, const std::vector<int>& u) {
  const double n = g.n(), d = g.regular_degree(), s = static_cast<double>(u.size());
  BoundCheck c;
  c.actual = static_cast<double>(edges_within(g, u));
  c.bound = d / n * s * (s - 1) / 2 + lam / n * s * (n - s / 2);
  c.ok = c.actual <= c.bound + kBoundSlack * (1 + c.bound);
  return c;
}

}  // namespace rlab
