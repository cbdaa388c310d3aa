#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "signpres/banded.hpp"
#include "signpres/error.hpp"
#include "signpres/grid.hpp"

namespace signpres {

struct EigenOptions {
  /// Relative change of successive Rayleigh quotients.
  double tol = 1e-12;
  int maxit = 10000;
  /// Sup-norm change of successive normalized iterates.
  double vector_tol = 1e-10;
  /// Largest admissible negative entry of a normalized iterate.
  double positivity_tol = 1e-8;
  /// Bound on residual / mu1 checked at exit.
  double residual_tol = 1e-6;
};

struct EigenPair {
  double mu1 = 0.0;
  Profile phi1;
  int iterations = 0;
  /// ||A phi - mu phi||_inf / ||phi||_inf.
  double residual = 0.0;
};

namespace detail {

inline double weighted_dot(const Grid& g, std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += g.weight(j) * x[j] * y[j];
  return s;
}

inline double rayleigh_quotient(const BandedMatrix& m, const Grid& g, std::span<const double> v) {
  const std::vector<double> av = m.multiply(v);
  return weighted_dot(g, av, v) / weighted_dot(g, v, v);
}

/// Scales v to unit sup-norm with its largest-magnitude entry positive and
/// returns the divisor.
inline double normalize_positive(std::vector<double>& v) {
  std::size_t arg = 0;
  for (std::size_t j = 1; j < v.size(); ++j)
    if (std::abs(v[j]) > std::abs(v[arg])) arg = j;
  const double s = v[arg];
  require(s != 0.0 && std::isfinite(s), ErrorKind::NumericalGuard, "inverse iteration produced a zero vector");
  for (double& x : v) x /= s;
  return s;
}

}  // namespace detail

/// Principal eigenpair by unshifted inverse power iteration from a given
/// strictly positive start vector.
inline EigenPair principal_eigenpair(const BandedMatrix& m, const Grid& g, std::vector<double> start,
                                     const EigenOptions& opt = {}) {
  require(m.size() == g.size() && start.size() == g.size(), ErrorKind::InvalidInput, "size mismatch");
  require(opt.maxit > 0 && opt.tol > 0.0, ErrorKind::InvalidInput, "invalid iteration controls");
  for (double s : start) require(s > 0.0, ErrorKind::InvalidInput, "start vector must be strictly positive");
  const BandedLU lu(m);
  std::vector<double> w = std::move(start);
  detail::normalize_positive(w);
  double rq_prev = detail::rayleigh_quotient(m, g, w);
  for (int it = 1; it <= opt.maxit; ++it) {
    std::vector<double> next = lu.solve(w);
    const double scale = detail::normalize_positive(next);
    double lowest = 0.0;
    for (double x : next) lowest = std::min(lowest, x);
    if (lowest < -opt.positivity_tol) {
      throw Error(ErrorKind::PositivityFailure,
                  "iterate " + std::to_string(it) + " changes sign (min " + std::to_string(lowest) + ")");
    }
    // A next = w / scale holds to solver accuracy; multiplying by A instead
    // would lose digits to cancellation in the O(h^-4) stencil.
    const double rq = detail::weighted_dot(g, w, next) / (scale * detail::weighted_dot(g, next, next));
    const double change = sup_distance(next, w);
    w = std::move(next);
    if (std::abs(rq - rq_prev) < opt.tol * std::abs(rq) && change < opt.vector_tol) {
      require(rq > 0.0, ErrorKind::PositivityFailure, "principal eigenvalue is not positive");
      const std::vector<double> aw = m.multiply(w);
      double res = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) res = std::max(res, std::abs(aw[j] - rq * w[j]));
      res /= sup_norm(w);
      if (!(res <= opt.residual_tol * rq)) {
        throw Error(ErrorKind::NumericalGuard, "eigen residual " + std::to_string(res) + " above bound");
      }
      return EigenPair{rq, Profile(g, std::move(w)), it, res};
    }
    rq_prev = rq;
  }
  throw Error(ErrorKind::NoConvergence, "inverse iteration did not converge in " + std::to_string(opt.maxit) + " steps");
}

/// Starts from the distance of each node to the boundary.
inline EigenPair principal_eigenpair(const BandedMatrix& m, const Grid& g, const EigenOptions& opt = {}) {
  std::vector<double> start(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) start[j] = g.boundary_distance(j);
  return principal_eigenpair(m, g, std::move(start), opt);
}

}  // namespace signpres
