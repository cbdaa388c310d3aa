#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "signpres/fd_solver.hpp"
#include "signpres/spectral.hpp"

namespace signpres {

/// Open interval (lo, hi) containing 0; lo may be -infinity.
struct OpenInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const noexcept { return x > lo && x < hi; }
};

using Nonlinearity = std::function<double(double)>;

/// B Delta^2 u - T Delta u = -lambda g(u) with clamped conditions, g defined on J.
class SemilinearProblem {
 public:
  SemilinearProblem(double bigB, double bigT, Grid grid, Nonlinearity g, OpenInterval domain, double lambda)
      : bigB_(bigB), bigT_(bigT), grid_(std::move(grid)), g_(std::move(g)), domain_(domain), lambda_(lambda) {
    require(bigB_ > 0.0 && std::isfinite(bigB_), ErrorKind::InvalidInput, "B must be positive");
    require(bigT_ >= 0.0 && std::isfinite(bigT_), ErrorKind::InvalidInput, "T must be non-negative");
    require(static_cast<bool>(g_), ErrorKind::InvalidInput, "nonlinearity missing");
    require(domain_.contains(0.0), ErrorKind::InvalidInput, "domain of g must contain 0");
    require(lambda_ >= 0.0 && std::isfinite(lambda_), ErrorKind::InvalidInput, "lambda must be non-negative");
    require(g_(0.0) > 0.0, ErrorKind::InvalidInput, "g(0) must be positive");
    spot_check_monotone();
  }

  double bigB() const noexcept { return bigB_; }
  double bigT() const noexcept { return bigT_; }
  const Grid& grid() const noexcept { return grid_; }
  const Nonlinearity& g() const noexcept { return g_; }
  const OpenInterval& domain() const noexcept { return domain_; }
  double lambda() const noexcept { return lambda_; }

  SemilinearProblem with_lambda(double lambda) const {
    SemilinearProblem p = *this;
    require(lambda >= 0.0 && std::isfinite(lambda), ErrorKind::InvalidInput, "lambda must be non-negative");
    p.lambda_ = lambda;
    return p;
  }

  BandedMatrix matrix() const { return assemble_radial(bigB_, bigT_, grid_); }

 private:
  // g >= 0 and non-increasing on 64 cell midpoints; infinite ends are cut at -/+10.
  void spot_check_monotone() const {
    const double lo = std::isfinite(domain_.lo) ? domain_.lo : std::min(-10.0, domain_.hi - 1.0);
    const double hi = std::isfinite(domain_.hi) ? domain_.hi : std::max(10.0, lo + 1.0);
    constexpr int kSamples = 64;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kSamples; ++k) {
      const double xi = lo + (hi - lo) * (k + 0.5) / kSamples;
      const double v = g_(xi);
      require(std::isfinite(v) && v >= 0.0, ErrorKind::InvalidInput,
              "g must be finite and non-negative on its domain (xi = " + std::to_string(xi) + ")");
      require(v <= prev * (1.0 + 1e-12), ErrorKind::InvalidInput,
              "g must be non-increasing (xi = " + std::to_string(xi) + ")");
      prev = v;
    }
  }

  double bigB_, bigT_;
  Grid grid_;
  Nonlinearity g_;
  OpenInterval domain_;
  double lambda_;
};

struct MonotoneOptions {
  double tol = 1e-10;
  int maxit = 10000;
};

enum class BranchOutcome { Converged, DomainExit, IterationCap };

inline const char* to_string(BranchOutcome o) {
  switch (o) {
    case BranchOutcome::Converged: return "converged";
    case BranchOutcome::DomainExit: return "domain_exit";
    case BranchOutcome::IterationCap: return "iteration_cap";
  }
  return "?";
}

struct BranchPoint {
  double lambda = 0.0;
  Profile u;
  int iterations = 0;
  bool converged = false;
  BranchOutcome outcome = BranchOutcome::IterationCap;
  double min_u = 0.0;
  /// max over steps and nodes of u_n - u_{n-1}; <= 0 for a monotone run.
  double max_increase = -std::numeric_limits<double>::infinity();
};

/// Monotone iteration u_0 = 0, (B Delta^2 - T Delta) u_n = -lambda g(u_{n-1}),
/// reusing a factorized system. Leaving J (by the margin 1e-6 |inf J|) or
/// hitting maxit is reported as converged = false, not thrown.
inline BranchPoint monotone_solve(const ClampedSystem& sys, const SemilinearProblem& p, const MonotoneOptions& opt = {}) {
  require(sys.grid() == p.grid(), ErrorKind::InvalidInput, "factorized system lives on a different grid");
  require(opt.tol > 0.0 && opt.maxit > 0, ErrorKind::InvalidInput, "invalid iteration controls");
  const std::size_t n = p.grid().size();
  const OpenInterval& J = p.domain();
  const double lower = std::isfinite(J.lo) ? J.lo + 1e-6 * std::abs(J.lo) : -std::numeric_limits<double>::infinity();

  BranchPoint bp{p.lambda(), Profile::constant(p.grid(), 0.0)};
  std::vector<double> u(n, 0.0), rhs(n);
  for (int it = 1; it <= opt.maxit; ++it) {
    bool ok = true;
    try {
      for (std::size_t j = 0; j < n; ++j) {
        const double gv = p.g()(u[j]);
        if (!std::isfinite(gv)) ok = false;
        rhs[j] = -p.lambda() * gv;
      }
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) {
      bp.outcome = BranchOutcome::DomainExit;
      bp.iterations = it - 1;
      break;
    }
    std::vector<double> next = sys.solve(rhs);
    double change = 0.0;
    bool inside = true;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = next[j] - u[j];
      change = std::max(change, std::abs(d));
      bp.max_increase = std::max(bp.max_increase, d);
      inside = inside && std::isfinite(next[j]) && next[j] > lower && next[j] < J.hi;
    }
    u = std::move(next);
    bp.iterations = it;
    if (!inside) {
      bp.outcome = BranchOutcome::DomainExit;
      break;
    }
    if (change < opt.tol) {
      bp.outcome = BranchOutcome::Converged;
      bp.converged = true;
      break;
    }
  }
  bp.u = Profile(p.grid(), std::move(u));
  bp.min_u = bp.u.min();
  return bp;
}

inline BranchPoint monotone_solve(const SemilinearProblem& p, const MonotoneOptions& opt = {}) {
  return monotone_solve(ClampedSystem(p.matrix(), p.grid()), p, opt);
}

struct BranchSweep {
  std::vector<BranchPoint> points;
  /// Indices i where points i and i+1 both converged but u_{i+1} < u_i fails somewhere.
  std::vector<std::size_t> violations;
};

/// Independent monotone solves for ascending lambdas sharing one factorization.
inline BranchSweep branch_sweep(const SemilinearProblem& tmpl, std::span<const double> lambdas,
                                const MonotoneOptions& opt = {}) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    require(lambdas[i] > 0.0, ErrorKind::InvalidInput, "lambdas must be positive");
    require(i == 0 || lambdas[i] > lambdas[i - 1], ErrorKind::InvalidInput, "lambdas must be ascending");
  }
  const ClampedSystem sys(tmpl.matrix(), tmpl.grid());
  BranchSweep out;
  for (double lambda : lambdas) out.points.push_back(monotone_solve(sys, tmpl.with_lambda(lambda), opt));
  for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
    const BranchPoint& a = out.points[i];
    const BranchPoint& b = out.points[i + 1];
    if (!a.converged || !b.converged) continue;
    for (std::size_t j = 0; j < a.u.size(); ++j) {
      if (!(b.u[j] < a.u[j])) {
        out.violations.push_back(i);
        break;
      }
    }
  }
  return out;
}

struct LambdaBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Bisection on convergence of the monotone iteration: converged at lo,
/// not converged at hi, hi - lo <= tol_lambda.
inline LambdaBracket lambda_star_bracket(const SemilinearProblem& tmpl, double lambda_hi0, double tol_lambda,
                                         const MonotoneOptions& opt = {}) {
  require(lambda_hi0 > 0.0 && std::isfinite(lambda_hi0), ErrorKind::InvalidInput, "initial lambda must be positive");
  require(tol_lambda > 0.0, ErrorKind::InvalidInput, "bracket tolerance must be positive");
  const ClampedSystem sys(tmpl.matrix(), tmpl.grid());
  auto converges = [&](double lambda) { return monotone_solve(sys, tmpl.with_lambda(lambda), opt).converged; };

  double lo = 0.0, hi = lambda_hi0;
  if (converges(hi)) {
    // Scan up until the iteration fails.
    int doublings = 0;
    do {
      require(++doublings <= 60, ErrorKind::BracketFailure, "no divergent lambda found below " + std::to_string(hi));
      lo = hi;
      hi *= 2.0;
    } while (converges(hi));
  } else {
    lo = hi;
    do {
      hi = lo;
      lo *= 0.5;
      require(lo >= 1e-8, ErrorKind::BracketFailure, "no convergent lambda found down to 1e-8");
    } while (!converges(lo));
  }
  while (hi - lo > tol_lambda) {
    const double mid = 0.5 * (lo + hi);
    (converges(mid) ? lo : hi) = mid;
  }
  return {lo, hi};
}

/// -inf J * mu1 / m with m the minimum of g over 10^4 samples of (inf J, 0].
/// Returns +infinity when J is unbounded below.
inline double lambda_star_bound(const SemilinearProblem& tmpl) {
  const double a = tmpl.domain().lo;
  if (!std::isfinite(a)) return std::numeric_limits<double>::infinity();
  constexpr int kSamples = 10000;
  double m = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kSamples; ++k) m = std::min(m, tmpl.g()(a - a * k / kSamples));
  require(m > 0.0, ErrorKind::InvalidInput, "inf of g over (inf J, 0] must be positive");
  const EigenPair ep = principal_eigenpair(tmpl.matrix(), tmpl.grid());
  return -a * ep.mu1 / m;
}

}  // namespace signpres
