#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "signpres/banded.hpp"
#include "signpres/error.hpp"
#include "signpres/grid.hpp"

namespace signpres {

/// B (u''/(1+u'^2)^alpha)'' + alpha B (u' u''^2/(1+u'^2)^(alpha+1))' - T (u'/sqrt(1+u'^2))' = f
/// on (-1, 1), clamped at both ends.
struct WillmoreProblem {
  double bigB = 1.0;
  double bigT = 0.0;
  double alpha = 2.5;
  Profile f;

  const Grid& grid() const noexcept { return f.grid; }

  void validate() const {
    require(f.grid.kind() == GridKind::Interval, ErrorKind::InvalidInput, "Willmore problems live on the interval");
    require(f.size() >= 4, ErrorKind::InvalidInput, "at least 4 interior nodes are required");
    require(bigB > 0.0 && std::isfinite(bigB), ErrorKind::InvalidInput, "B must be positive");
    require(bigT >= 0.0 && std::isfinite(bigT), ErrorKind::InvalidInput, "T must be non-negative");
    require(alpha > 0.0 && std::isfinite(alpha), ErrorKind::InvalidInput, "alpha must be positive");
    for (double v : f.values) require(std::isfinite(v), ErrorKind::InvalidInput, "f must be finite");
  }
};

struct WillmoreOptions {
  double tol = 1e-10;
  int maxit = 50;
};

struct WillmoreSolution {
  Profile u;
  int iterations = 0;
  /// Sup-norm of the discrete residual at u.
  double residual = 0.0;
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

/// First and second central differences at nodes 0..n+1 (boundary nodes
/// included) using u = 0 at the ends and the ghost reflection for u' = 0.
struct NodeDerivatives {
  std::vector<double> d1, d2;
};

inline NodeDerivatives clamped_derivatives(std::span<const double> u, double h) {
  const std::size_t n = u.size();
  // ext[k] = value at node k - 1 for k = 0..n+3.
  std::vector<double> ext(n + 4, 0.0);
  std::copy(u.begin(), u.end(), ext.begin() + 2);
  ext[0] = u[0];
  ext[n + 3] = u[n - 1];
  NodeDerivatives out{std::vector<double>(n + 2), std::vector<double>(n + 2)};
  for (std::size_t k = 0; k <= n + 1; ++k) {
    out.d1[k] = (ext[k + 2] - ext[k]) / (2.0 * h);
    out.d2[k] = (ext[k + 2] - 2.0 * ext[k + 1] + ext[k]) / (h * h);
  }
  return out;
}

}  // namespace detail

/// Conservation-form central-difference residual at the interior nodes.
inline std::vector<double> willmore_residual(const WillmoreProblem& p, std::span<const double> u) {
  const std::size_t n = p.f.size();
  require(u.size() == n, ErrorKind::InvalidInput, "iterate has wrong length");
  const double h = p.grid().h();
  const detail::NodeDerivatives d = detail::clamped_derivatives(u, h);
  std::vector<double> P(n + 2), Q(n + 2), S(n + 2);
  for (std::size_t k = 0; k <= n + 1; ++k) {
    const double s = 1.0 + d.d1[k] * d.d1[k];
    P[k] = d.d2[k] / std::pow(s, p.alpha);
    Q[k] = d.d1[k] * d.d2[k] * d.d2[k] / std::pow(s, p.alpha + 1.0);
    S[k] = d.d1[k] / std::sqrt(s);
  }
  std::vector<double> r(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = j + 1;
    r[j] = p.bigB * (P[k + 1] - 2.0 * P[k] + P[k - 1]) / (h * h) +
           p.alpha * p.bigB * (Q[k + 1] - Q[k - 1]) / (2.0 * h) - p.bigT * (S[k + 1] - S[k - 1]) / (2.0 * h) - p.f[j];
  }
  return r;
}

/// Damped Newton with a banded finite-difference Jacobian: centred
/// differences with steps 1e-7 (1 + |u_j|), columns probed five at a time.
inline WillmoreSolution willmore_solve(const WillmoreProblem& p, const WillmoreOptions& opt = {}) {
  p.validate();
  require(opt.tol > 0.0 && opt.maxit > 0, ErrorKind::InvalidInput, "invalid iteration controls");
  const std::size_t n = p.f.size();
  std::vector<double> u(n, 0.0);
  std::vector<double> r = willmore_residual(p, u);
  double norm = sup_norm(r);
  for (int it = 0;; ++it) {
    if (norm < opt.tol) return {Profile(p.grid(), std::move(u)), it, norm};
    if (it == opt.maxit) break;

    BandedMatrix jac(n, 2, 2);
    std::vector<double> step(n, 0.0), plus(n), minus(n);
    for (std::size_t color = 0; color < 5 && color < n; ++color) {
      plus = u;
      minus = u;
      for (std::size_t j = color; j < n; j += 5) {
        step[j] = 1e-7 * (1.0 + std::abs(u[j]));
        plus[j] += step[j];
        minus[j] -= step[j];
      }
      const std::vector<double> rp = willmore_residual(p, plus);
      const std::vector<double> rm = willmore_residual(p, minus);
      for (std::size_t j = color; j < n; j += 5) {
        const std::size_t i0 = j > 2 ? j - 2 : 0;
        const std::size_t i1 = std::min(n - 1, j + 2);
        for (std::size_t i = i0; i <= i1; ++i) jac.at(i, j) = (rp[i] - rm[i]) / (2.0 * step[j]);
      }
    }
    std::vector<double> neg(n);
    for (std::size_t j = 0; j < n; ++j) neg[j] = -r[j];
    const std::vector<double> delta = BandedLU(jac).solve(neg);

    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 30; ++halving, t *= 0.5) {
      std::vector<double> trial(n);
      for (std::size_t j = 0; j < n; ++j) trial[j] = u[j] + t * delta[j];
      std::vector<double> rt = willmore_residual(p, trial);
      const double nt = sup_norm(rt);
      if (nt < norm) {
        u = std::move(trial);
        r = std::move(rt);
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw Error(ErrorKind::NoConvergence,
                  "line search stalled at residual " + detail::sci(norm) + " after " + std::to_string(it) + " steps");
    }
  }
  throw Error(ErrorKind::NoConvergence, "Newton did not converge in " + std::to_string(opt.maxit) + " steps (residual " + detail::sci(norm) + ")");
}

/// Re-evaluates the equation through gamma = u''/(1+u'^2)^(alpha/2):
/// a2 gamma'' + b2 gamma' + c2 gamma with a2 = B (1+u'^2)^(-alpha/2),
/// b2 = a2', c2 = -T (1+u'^2)^((alpha-3)/2), by central differences.
/// Returns the sup-norm difference from f.
inline double euler_substitution_residual(const WillmoreProblem& p, const Profile& u) {
  p.validate();
  require(u.grid == p.grid(), ErrorKind::InvalidInput, "solution lives on a different grid");
  const std::size_t n = u.size();
  const double h = p.grid().h();
  const detail::NodeDerivatives d = detail::clamped_derivatives(u.values, h);
  std::vector<double> gamma(n + 2);
  for (std::size_t k = 0; k <= n + 1; ++k)
    gamma[k] = d.d2[k] / std::pow(1.0 + d.d1[k] * d.d1[k], p.alpha / 2.0);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = j + 1;
    const double s = 1.0 + d.d1[k] * d.d1[k];
    const double a2 = p.bigB * std::pow(s, -p.alpha / 2.0);
    const double b2 = -p.alpha * p.bigB * d.d1[k] * d.d2[k] * std::pow(s, -p.alpha / 2.0 - 1.0);
    const double c2 = -p.bigT * std::pow(s, (p.alpha - 3.0) / 2.0);
    const double lhs = a2 * (gamma[k + 1] - 2.0 * gamma[k] + gamma[k - 1]) / (h * h) +
                       b2 * (gamma[k + 1] - gamma[k - 1]) / (2.0 * h) + c2 * gamma[k];
    worst = std::max(worst, std::abs(lhs - p.f[j]));
  }
  return worst;
}

}  // namespace signpres
