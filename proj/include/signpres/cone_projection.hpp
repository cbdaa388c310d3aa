#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "signpres/error.hpp"
#include "signpres/grid.hpp"

namespace signpres {

/// Discrete <u, v> = int B u'' v'' + T u' v' for clamped grid functions on the
/// interval. u'' is the centred second difference at the nodes -1..1
/// (boundary nodes weighted h/2, ghosts reflected); u' the forward difference
/// on the n + 1 cells.
class EnergyInnerProduct {
 public:
  EnergyInnerProduct(double bigB, double bigT, Grid grid) : bigB_(bigB), bigT_(bigT), grid_(std::move(grid)) {
    require(bigB_ > 0.0 && std::isfinite(bigB_), ErrorKind::InvalidInput, "B must be positive");
    require(bigT_ >= 0.0 && std::isfinite(bigT_), ErrorKind::InvalidInput, "T must be non-negative");
    require(grid_.kind() == GridKind::Interval, ErrorKind::InvalidInput, "energy inner product needs an interval grid");
    const Eigen::Index n = static_cast<Eigen::Index>(grid_.size());
    require(n >= 1, ErrorKind::InvalidInput, "empty grid");
    const double h = grid_.h();

    // Rows: boundary node, n interior nodes, boundary node.
    Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(n + 2, n);
    Eigen::VectorXd w2 = Eigen::VectorXd::Constant(n + 2, h);
    w2(0) = w2(n + 1) = h / 2.0;
    d2(0, 0) = 2.0 / (h * h);
    d2(n + 1, n - 1) = 2.0 / (h * h);
    for (Eigen::Index j = 0; j < n; ++j) {
      d2(j + 1, j) = -2.0 / (h * h);
      if (j > 0) d2(j + 1, j - 1) = 1.0 / (h * h);
      if (j + 1 < n) d2(j + 1, j + 1) = 1.0 / (h * h);
    }
    Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(n + 1, n);
    for (Eigen::Index k = 0; k <= n; ++k) {
      if (k < n) d1(k, k) = 1.0 / h;
      if (k > 0) d1(k, k - 1) = -1.0 / h;
    }
    gram_ = bigB_ * d2.transpose() * w2.asDiagonal() * d2 + bigT_ * h * d1.transpose() * d1;
    gram_ = 0.5 * (gram_ + gram_.transpose());
    llt_.compute(gram_);
    require(llt_.info() == Eigen::Success, ErrorKind::NumericalGuard, "energy Gram matrix is not positive definite");
  }

  double bigB() const noexcept { return bigB_; }
  double bigT() const noexcept { return bigT_; }
  const Grid& grid() const noexcept { return grid_; }
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }

  double operator()(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return u.dot(gram_ * v); }
  double norm(const Eigen::VectorXd& u) const { return std::sqrt(std::max(0.0, (*this)(u, u))); }

 private:
  double bigB_, bigT_;
  Grid grid_;
  Eigen::MatrixXd gram_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

struct MoreauSplit {
  Profile v;  // in the cone v >= 0
  Profile w;  // u - v
  double gap = 0.0;
  /// KKT multipliers G (v - u); zero off the active set by construction.
  std::vector<double> multipliers;
  std::vector<bool> active;
  int iterations = 0;
  /// Sup-norm of G (v - u) on the free set, relative to sup |G u|.
  double stationarity = 0.0;
};

inline Eigen::VectorXd to_eigen(const Profile& p) {
  return Eigen::Map<const Eigen::VectorXd>(p.values.data(), static_cast<Eigen::Index>(p.size()));
}

/// argmin <v-u, v-u> over v >= 0 by a primal active-set method started from
/// max(u, 0); constraints are released and blocked by the smallest index.
inline MoreauSplit project_cone(const Profile& u, const EnergyInnerProduct& ip, double tol = 1e-12) {
  require(u.grid == ip.grid(), ErrorKind::InvalidInput, "profile lives on a different grid");
  require(tol >= 0.0, ErrorKind::InvalidInput, "tolerance must be non-negative");
  const Eigen::MatrixXd& G = ip.gram();
  const Eigen::Index n = G.rows();
  const Eigen::VectorXd uu = to_eigen(u);
  const Eigen::VectorXd gu = G * uu;
  const double scale = std::max(gu.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());

  Eigen::VectorXd v = uu.cwiseMax(0.0);
  std::vector<bool> active(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) active[i] = v(i) == 0.0;

  const int cap = 10 * static_cast<int>(n);
  for (int it = 1; it <= cap; ++it) {
    // Equality-constrained minimizer with v = 0 on the active set, solved for
    // the correction v - u so that an empty active set returns u exactly.
    std::vector<Eigen::Index> free, fixed;
    for (Eigen::Index i = 0; i < n; ++i) (active[i] ? fixed : free).push_back(i);
    Eigen::VectorXd cand = Eigen::VectorXd::Zero(n);
    if (!free.empty()) {
      const Eigen::Index m = static_cast<Eigen::Index>(free.size());
      Eigen::MatrixXd sub(m, m);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
      for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = G(free[a], free[b]);
        for (Eigen::Index i : fixed) rhs(a) += G(free[a], i) * uu(i);
      }
      const Eigen::VectorXd df = sub.llt().solve(rhs);
      for (Eigen::Index a = 0; a < m; ++a) cand(free[a]) = uu(free[a]) + df(a);
    }

    // Step towards the candidate, stopping at the first constraint it crosses.
    double t = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index i : free) {
      if (cand(i) < 0.0) {
        const double ti = v(i) / (v(i) - cand(i));
        if (ti < t) {
          t = ti;
          blocking = i;
        }
      }
    }
    if (blocking >= 0) {
      v += t * (cand - v);
      v(blocking) = 0.0;
      active[blocking] = true;
      continue;
    }
    v = cand;

    const Eigen::VectorXd mu = G * (v - uu);
    Eigen::Index release = -1;
    for (Eigen::Index i = 0; i < n && release < 0; ++i)
      if (active[i] && mu(i) < -tol * scale) release = i;
    if (release >= 0) {
      active[release] = false;
      continue;
    }

    MoreauSplit out{Profile(u.grid, std::vector<double>(v.data(), v.data() + n)),
                    Profile(u.grid, std::vector<double>(n)), 0.0, std::vector<double>(n, 0.0), active, it, 0.0};
    for (Eigen::Index i = 0; i < n; ++i) {
      out.w.values[i] = uu(i) - v(i);
      if (active[i]) out.multipliers[i] = mu(i);
      else out.stationarity = std::max(out.stationarity, std::abs(mu(i)) / scale);
    }
    out.gap = ip(v, to_eigen(out.w));
    return out;
  }
  throw Error(ErrorKind::NoConvergence, "active-set iteration exceeded " + std::to_string(cap) + " steps");
}

}  // namespace signpres
