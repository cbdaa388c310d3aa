#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "signpres/error.hpp"
#include "signpres/grid.hpp"

namespace signpres {

/// Node samples of L w = a w'' + b w' + c w together with the first and second
/// derivatives of each coefficient.
struct SecondOrderCoeffs {
  std::vector<double> a, da, dda;
  std::vector<double> b, db, ddb;
  std::vector<double> c, dc, ddc;

  static SecondOrderCoeffs constant(std::size_t n, double a, double b, double c) {
    SecondOrderCoeffs s;
    const std::vector<double> zero(n, 0.0);
    s.a.assign(n, a);
    s.b.assign(n, b);
    s.c.assign(n, c);
    s.da = s.dda = s.db = s.ddb = s.dc = s.ddc = zero;
    return s;
  }

  std::size_t size() const noexcept { return a.size(); }

  bool lengths_equal(std::size_t n) const {
    for (const auto* v : {&a, &da, &dda, &b, &db, &ddb, &c, &dc, &ddc})
      if (v->size() != n) return false;
    return true;
  }

  double min_a() const { return *std::min_element(a.begin(), a.end()); }
  double max_c() const { return *std::max_element(c.begin(), c.end()); }

  /// Throws InvalidInput unless lengths, ellipticity (a >= eta) and c <= 0 hold.
  void validate(std::size_t n, double eta, const char* name) const {
    const std::string who(name);
    require(lengths_equal(n), ErrorKind::InvalidInput, who + ": sample arrays do not match grid size");
    require(n > 0, ErrorKind::InvalidInput, who + ": empty coefficients");
    require(min_a() >= eta, ErrorKind::InvalidInput, who + ": ellipticity a >= eta violated");
    require(max_c() <= 0.0, ErrorKind::InvalidInput, who + ": zeroth-order coefficient must be <= 0");
  }
};

/// Pair (L1, L2) with L1 u = gamma and L2 gamma = f. `eta` is the common
/// ellipticity constant of both factors.
struct FactorPair {
  SecondOrderCoeffs l1;
  SecondOrderCoeffs l2;
  double eta = 1.0;

  void validate(std::size_t n) const {
    require(eta > 0.0 && std::isfinite(eta), ErrorKind::InvalidInput, "eta must be positive");
    l1.validate(n, eta, "L1");
    l2.validate(n, eta, "L2");
  }
};

/// Coefficients of A4 u'''' + A3 u''' + A2 u'' + A1 u' + A0 u.
struct FourthOrderCoeffs {
  std::vector<double> a4, a3, a2, a1, a0;

  static FourthOrderCoeffs constant(std::size_t n, double c4, double c3, double c2, double c1, double c0) {
    return {std::vector<double>(n, c4), std::vector<double>(n, c3), std::vector<double>(n, c2),
            std::vector<double>(n, c1), std::vector<double>(n, c0)};
  }

  std::size_t size() const noexcept { return a4.size(); }

  bool lengths_equal(std::size_t n) const {
    return a4.size() == n && a3.size() == n && a2.size() == n && a1.size() == n && a0.size() == n;
  }
};

/// Node-wise composition L = L2 o L1 expressed as a fourth-order operator.
inline FourthOrderCoeffs compose(const FactorPair& fp, const Grid& g) {
  const std::size_t n = g.size();
  require(fp.l1.lengths_equal(n) && fp.l2.lengths_equal(n), ErrorKind::InvalidInput,
          "factor pair is not sampled on this grid");
  const SecondOrderCoeffs& p = fp.l1;
  const SecondOrderCoeffs& q = fp.l2;
  FourthOrderCoeffs out{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                        std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.a4[j] = p.a[j] * q.a[j];
    out.a3[j] = (2.0 * p.da[j] + p.b[j]) * q.a[j] + p.a[j] * q.b[j];
    out.a2[j] = (p.dda[j] + 2.0 * p.db[j] + p.c[j]) * q.a[j] + (p.da[j] + p.b[j]) * q.b[j] + p.a[j] * q.c[j];
    out.a1[j] = (p.ddb[j] + 2.0 * p.dc[j]) * q.a[j] + (p.db[j] + p.c[j]) * q.b[j] + p.b[j] * q.c[j];
    out.a0[j] = p.ddc[j] * q.a[j] + p.dc[j] * q.b[j] + p.c[j] * q.c[j];
  }
  return out;
}

/// L1 = d^2/dx^2 and L2 = d^2/dx^2 + a d/dx + lambda, valid for lambda <= 0.
inline FactorPair trivial_factor(double a, double lambda, const Grid& g) {
  require(std::isfinite(a) && std::isfinite(lambda), ErrorKind::InvalidInput, "non-finite parameter");
  require(lambda <= 0.0, ErrorKind::InvalidInput, "trivial factorization needs lambda <= 0");
  const std::size_t n = g.size();
  return FactorPair{SecondOrderCoeffs::constant(n, 1.0, 0.0, 0.0), SecondOrderCoeffs::constant(n, 1.0, a, lambda),
                    1.0};
}

enum class WeightBranch { Exponential, Critical, Oscillatory };

inline const char* to_string(WeightBranch b) {
  switch (b) {
    case WeightBranch::Exponential: return "exponential";
    case WeightBranch::Critical: return "critical";
    case WeightBranch::Oscillatory: return "oscillatory";
  }
  return "?";
}

/// Upper end of the parameter range covered by factor_anti_diffusive.
inline double anti_diffusive_threshold(double a) { return (a * a + std::numbers::pi * std::numbers::pi) / 4.0; }

/// Positive solution p of p'' + a p' + lambda p = 0 on [-1, 1] and its first
/// three derivatives.
struct WeightSample {
  double p, dp, ddp, dddp;
};

inline WeightBranch weight_branch(double a, double lambda) {
  const double quarter = a * a / 4.0;
  if (lambda == quarter) return WeightBranch::Critical;
  return lambda < quarter ? WeightBranch::Exponential : WeightBranch::Oscillatory;
}

inline WeightSample anti_diffusive_weight(double a, double lambda, double x) {
  WeightSample s{};
  switch (weight_branch(a, lambda)) {
    case WeightBranch::Exponential: {
      const double k = (a + std::sqrt(a * a - 4.0 * lambda)) / 2.0;
      s.p = std::exp(-k * x);
      s.dp = -k * s.p;
      s.ddp = k * k * s.p;
      break;
    }
    case WeightBranch::Critical: {
      const double e = std::exp(-a * x / 2.0);
      s.p = (2.0 + x) * e;
      s.dp = e * (1.0 - a / 2.0 * (2.0 + x));
      s.ddp = e * (-a + a * a / 4.0 * (2.0 + x));
      break;
    }
    case WeightBranch::Oscillatory: {
      const double w = std::sqrt(4.0 * lambda - a * a) / 2.0;
      const double e = std::exp(-a * x / 2.0);
      const double cs = std::cos(w * x);
      const double sn = std::sin(w * x);
      s.p = cs * e;
      s.dp = e * (-w * sn - a / 2.0 * cs);
      s.ddp = e * ((a * a / 4.0 - w * w) * cs + a * w * sn);
      break;
    }
  }
  // Differentiating the ODE once: p''' = -a p'' - lambda p'.
  s.dddp = -a * s.ddp - lambda * s.dp;
  return s;
}

/// L1 = (1/p) d^2/dx^2, L2 = p d^2/dx^2 + (2p' + a p) d/dx, for
/// 0 < lambda < (a^2 + pi^2)/4. Coefficient derivatives are analytic.
inline FactorPair factor_anti_diffusive(double a, double lambda, const Grid& g) {
  require(g.kind() == GridKind::Interval, ErrorKind::InvalidInput, "anti-diffusive factorization needs an interval grid");
  require(std::isfinite(a) && std::isfinite(lambda), ErrorKind::InvalidInput, "non-finite parameter");
  require(lambda > 0.0 && lambda < anti_diffusive_threshold(a), ErrorKind::OutOfRange,
          "lambda must lie in (0, (a^2 + pi^2)/4)");
  const std::size_t n = g.size();
  FactorPair fp{SecondOrderCoeffs::constant(n, 0.0, 0.0, 0.0), SecondOrderCoeffs::constant(n, 0.0, 0.0, 0.0), 0.0};
  double eta = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const WeightSample s = anti_diffusive_weight(a, lambda, g.node(j));
    if (!(s.p > 0.0)) {
      throw Error(ErrorKind::NumericalGuard, "weight p not positive at node " + std::to_string(j));
    }
    const double p = s.p, dp = s.dp, ddp = s.ddp;
    fp.l1.a[j] = 1.0 / p;
    fp.l1.da[j] = -dp / (p * p);
    fp.l1.dda[j] = (2.0 * dp * dp - p * ddp) / (p * p * p);
    fp.l2.a[j] = p;
    fp.l2.da[j] = dp;
    fp.l2.dda[j] = ddp;
    fp.l2.b[j] = 2.0 * dp + a * p;
    fp.l2.db[j] = 2.0 * ddp + a * dp;
    fp.l2.ddb[j] = 2.0 * s.dddp + a * ddp;
    eta = std::min({eta, fp.l1.a[j], p});
  }
  fp.eta = eta;
  return fp;
}

}  // namespace signpres
