#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "signpres/banded.hpp"
#include "signpres/error.hpp"
#include "signpres/grid.hpp"
#include "signpres/operator_core.hpp"

namespace signpres {

inline constexpr std::size_t kMinNodes = 4;

namespace detail {

/// Recovers a matrix of bandwidth `bw` from a linear map in 2*bw+1 applications
/// by probing with every (2*bw+1)-th unit vector at once.
template <class Apply>
BandedMatrix probe_banded(std::size_t n, std::size_t bw, Apply&& apply) {
  BandedMatrix m(n, bw, bw);
  const std::size_t stride = 2 * bw + 1;
  std::vector<double> probe(n);
  for (std::size_t color = 0; color < stride && color < n; ++color) {
    std::fill(probe.begin(), probe.end(), 0.0);
    for (std::size_t j = color; j < n; j += stride) probe[j] = 1.0;
    const std::vector<double> col = apply(std::span<const double>(probe));
    for (std::size_t j = color; j < n; j += stride) {
      const std::size_t i0 = j > bw ? j - bw : 0;
      const std::size_t i1 = std::min(n - 1, j + bw);
      for (std::size_t i = i0; i <= i1; ++i) m.at(i, j) = col[i];
    }
  }
  return m;
}

inline double radial_weight(double r, int dim) { return std::pow(r, dim - 1); }

/// B Delta^2 U - T Delta U for radial U on a staggered ball grid. The exterior
/// ghosts are exact for quadratics: U(1) = 0 through the parabola on
/// U_{n-1}, U_n, U_{n+1}, and U'(1) = 0 through the centred difference
/// (U_{n+2} - U_{n-1}) / 3h. The cell volume (r_{j+1/2}^d - r_{j-1/2}^d)/d
/// makes the discrete Laplacian exact on r^2.
inline std::vector<double> apply_radial_ball(const Grid& g, double bigB, double bigT, std::span<const double> u) {
  const std::size_t n = g.size();
  const double h = g.h();
  const int d = g.dim();
  std::vector<double> ext(n + 2);
  std::copy(u.begin(), u.end(), ext.begin());
  ext[n] = u[n - 2] / 3.0 - 2.0 * u[n - 1];
  ext[n + 1] = u[n - 2];
  // lap[j] for j = 0..n (node j+1 in one-based numbering; lap[n] is the first ghost).
  auto laplacian = [&](const std::vector<double>& v, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) {
      const double volume = (std::pow(static_cast<double>(j + 1) * h, d) - std::pow(static_cast<double>(j) * h, d)) /
                            (static_cast<double>(d) * h);
      const double w_minus = radial_weight(static_cast<double>(j) * h, d);
      const double w_plus = radial_weight(static_cast<double>(j + 1) * h, d);
      const double flux_plus = w_plus * (v[j + 1] - v[j]);
      const double flux_minus = j == 0 ? 0.0 : w_minus * (v[j] - v[j - 1]);
      out[j] = (flux_plus - flux_minus) / (h * h * volume);
    }
    return out;
  };
  const std::vector<double> lap = laplacian(ext, n + 1);
  const std::vector<double> bilap = laplacian(lap, n);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = bigB * bilap[j] - bigT * lap[j];
  return out;
}

/// Same operator on an annulus grid; U = 0 on the boundary nodes and the
/// slope conditions use the reflected ghosts U_{-1} = U_1, U_{n+2} = U_n.
inline std::vector<double> apply_radial_annulus(const Grid& g, double bigB, double bigT,
                                                std::span<const double> u) {
  const std::size_t n = g.size();
  const double h = g.h();
  const int d = g.dim();
  const double rho = g.rho();
  // ext[k] holds node k - 1, k = 0..n+3 (ghost, boundary, interior..., boundary, ghost).
  std::vector<double> ext(n + 4, 0.0);
  std::copy(u.begin(), u.end(), ext.begin() + 2);
  ext[0] = u[0];
  ext[n + 3] = u[n - 1];
  auto r_at = [&](double node) { return rho + node * h; };
  // lap[k] at nodes k = 0..n+1.
  std::vector<double> lap(n + 2);
  for (std::size_t k = 0; k <= n + 1; ++k) {
    const double node = static_cast<double>(k);
    const double w_plus = radial_weight(r_at(node + 0.5), d);
    const double w_minus = radial_weight(r_at(node - 0.5), d);
    const double c = ext[k + 1];
    lap[k] = (w_plus * (ext[k + 2] - c) - w_minus * (c - ext[k])) / (h * h * radial_weight(r_at(node), d));
  }
  std::vector<double> out(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double node = static_cast<double>(j);
    const double w_plus = radial_weight(r_at(node + 0.5), d);
    const double w_minus = radial_weight(r_at(node - 0.5), d);
    const double bilap =
        (w_plus * (lap[j + 1] - lap[j]) - w_minus * (lap[j] - lap[j - 1])) / (h * h * radial_weight(r_at(node), d));
    out[j - 1] = bigB * bilap - bigT * lap[j];
  }
  return out;
}

}  // namespace detail

/// Pentadiagonal central-difference matrix of A4 u'''' + ... + A0 u with
/// u = 0 at both ends and the slope condition through u_ghost = u_first.
inline BandedMatrix assemble_1d(const FourthOrderCoeffs& coeffs, const Grid& g) {
  require(g.kind() != GridKind::Ball, ErrorKind::InvalidInput, "assemble_1d needs an interval or annulus grid");
  const std::size_t n = g.size();
  require(n >= kMinNodes, ErrorKind::InvalidInput, "at least 4 interior nodes are required");
  require(coeffs.lengths_equal(n), ErrorKind::InvalidInput, "coefficients not sampled on this grid");
  const double h = g.h();
  const double h2 = h * h, h3 = h2 * h, h4 = h3 * h;
  BandedMatrix m(n, 2, 2);
  for (std::size_t j = 0; j < n; ++j) {
    const double a4 = coeffs.a4[j] / h4, a3 = coeffs.a3[j] / (2.0 * h3), a2 = coeffs.a2[j] / h2,
                 a1 = coeffs.a1[j] / (2.0 * h), a0 = coeffs.a0[j];
    // Weights for offsets -2..2.
    const double w[5] = {a4 - a3, -4.0 * a4 + 2.0 * a3 + a2 - a1, 6.0 * a4 - 2.0 * a2 + a0,
                         -4.0 * a4 - 2.0 * a3 + a2 + a1, a4 + a3};
    for (int off = -2; off <= 2; ++off) {
      const long col = static_cast<long>(j) + off;
      const double wk = w[off + 2];
      if (col >= 0 && col < static_cast<long>(n)) {
        m.at(j, static_cast<std::size_t>(col)) += wk;
      } else if (col == -2) {
        m.at(j, 0) += wk;  // ghost left of x = -1 equals the first interior value
      } else if (col == static_cast<long>(n) + 1) {
        m.at(j, n - 1) += wk;
      }
      // col == -1 and col == n are the boundary nodes where u = 0.
    }
  }
  return m;
}

/// B Delta^2 - T Delta for radially symmetric functions in conservation form.
inline BandedMatrix assemble_radial(double bigB, double bigT, const Grid& g) {
  require(bigB > 0.0 && std::isfinite(bigB), ErrorKind::InvalidInput, "B must be positive");
  require(bigT >= 0.0 && std::isfinite(bigT), ErrorKind::InvalidInput, "T must be non-negative");
  require(g.dim() >= 1, ErrorKind::InvalidInput, "dimension must be >= 1");
  const std::size_t n = g.size();
  require(n >= kMinNodes, ErrorKind::InvalidInput, "at least 4 interior nodes are required");
  switch (g.kind()) {
    case GridKind::Interval:
      return assemble_1d(FourthOrderCoeffs::constant(n, bigB, 0.0, -bigT, 0.0, 0.0), g);
    case GridKind::Ball:
      return detail::probe_banded(n, 2, [&](std::span<const double> u) {
        return detail::apply_radial_ball(g, bigB, bigT, u);
      });
    case GridKind::Annulus:
      return detail::probe_banded(n, 2, [&](std::span<const double> u) {
        return detail::apply_radial_annulus(g, bigB, bigT, u);
      });
  }
  throw Error(ErrorKind::InvalidInput, "unknown grid kind");
}

/// A discretized clamped problem on a grid with its factorization computed once.
class ClampedSystem {
 public:
  ClampedSystem(BandedMatrix m, Grid g) : matrix_(std::move(m)), grid_(std::move(g)), lu_(matrix_) {
    require(matrix_.size() == grid_.size(), ErrorKind::InvalidInput, "matrix size does not match grid");
  }

  const BandedMatrix& matrix() const noexcept { return matrix_; }
  const Grid& grid() const noexcept { return grid_; }

  std::vector<double> solve(std::span<const double> rhs) const { return lu_.solve(rhs); }

  Profile solve(const Profile& rhs) const {
    require(rhs.grid == grid_, ErrorKind::InvalidInput, "right-hand side lives on a different grid");
    return Profile(grid_, lu_.solve(rhs.values));
  }

 private:
  BandedMatrix matrix_;
  Grid grid_;
  BandedLU lu_;
};

inline Profile solve(const BandedMatrix& m, const Profile& rhs) {
  require(m.size() == rhs.size(), ErrorKind::InvalidInput, "right-hand side has wrong length");
  return Profile(rhs.grid, BandedLU(m).solve(rhs.values));
}

/// Column j solves M G_j = e_j / h, so G approximates the continuous kernel
/// with quadrature weight h.
inline Eigen::MatrixXd green_matrix(const BandedMatrix& m, const Grid& g) {
  const std::size_t n = m.size();
  require(n == g.size(), ErrorKind::InvalidInput, "matrix size does not match grid");
  const BandedLU lu(m);
  Eigen::MatrixXd green(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0 / g.h();
    const std::vector<double> col = lu.solve(e);
    for (std::size_t i = 0; i < n; ++i) green(i, j) = col[i];
    e[j] = 0.0;
  }
  return green;
}

/// Discrete second derivative of a clamped profile at the boundary:
/// {left or inner end, outer end}. The ball has no inner boundary.
struct BoundaryCurvature {
  std::optional<double> inner;
  double outer = 0.0;
};

inline BoundaryCurvature boundary_second_derivatives(const Profile& u) {
  const Grid& g = u.grid;
  const std::size_t n = g.size();
  require(n >= 2, ErrorKind::InvalidInput, "profile too short");
  const double h2 = g.h() * g.h();
  BoundaryCurvature out;
  if (g.kind() == GridKind::Ball) {
    // Centred second difference about r = 1 on U_{n-1}, U_n and the two ghosts.
    const double un = u[n - 1], um = u[n - 2];
    out.outer = (5.0 * um / 3.0 + un) / (2.0 * h2);
  } else {
    out.inner = 2.0 * u[0] / h2;
    out.outer = 2.0 * u[n - 1] / h2;
  }
  return out;
}

}  // namespace signpres
