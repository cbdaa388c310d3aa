#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "signpres/fd_solver.hpp"
#include "signpres/operator_core.hpp"

namespace signpres {

enum class Verdict { SignPreserving, Violated, Singular };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::SignPreserving: return "SignPreserving";
    case Verdict::Violated: return "Violated";
    case Verdict::Singular: return "Singular";
  }
  return "?";
}

inline constexpr double kDefaultSignTolerance = 1e-8;

struct NodePair {
  std::size_t row = 0;
  std::size_t col = 0;
};

struct SignReport {
  Verdict verdict = Verdict::SignPreserving;
  /// Smallest Green entry divided by the largest entry magnitude.
  double min_green_normalized = 0.0;
  NodePair min_location;
  std::optional<NodePair> violation_location;
  /// Discrete u''(-1), u''(1) (or U''(rho), U''(1); the ball has no inner end)
  /// for the solution with f = -1.
  BoundaryCurvature boundary_second_derivatives;
  /// u < 0 at every interior node for f = -1.
  bool solution_negative = false;
  double solution_max = 0.0;
};

/// Entry-wise sign test of the discrete Green matrix. Entries are compared
/// against -tol * max|G| because the kernel itself vanishes at the boundary.
inline SignReport check_sign_preserving(const BandedMatrix& m, const Grid& g, double tol = kDefaultSignTolerance) {
  require(tol >= 0.0, ErrorKind::InvalidInput, "tolerance must be non-negative");
  const Eigen::MatrixXd green = green_matrix(m, g);
  SignReport report;
  const double scale = green.cwiseAbs().maxCoeff();
  Eigen::Index r = 0, c = 0;
  const double min_entry = green.minCoeff(&r, &c);
  report.min_green_normalized = scale > 0.0 ? min_entry / scale : 0.0;
  report.min_location = {static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
  if (report.min_green_normalized < -tol) {
    report.verdict = Verdict::Violated;
    report.violation_location = report.min_location;
  }
  // f = -1 is a row sum of the Green matrix scaled by -h.
  std::vector<double> u(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) u[i] = -g.h() * green.row(static_cast<Eigen::Index>(i)).sum();
  const Profile sol(g, std::move(u));
  report.boundary_second_derivatives = boundary_second_derivatives(sol);
  report.solution_max = sol.max();
  report.solution_negative = report.solution_max < 0.0;
  return report;
}

struct GammaReport {
  std::optional<double> y0, y1;
  std::pair<double, double> gamma_boundary{0.0, 0.0};
  bool pattern_valid = false;
  std::size_t positive_arcs = 0;
  /// gamma = L1 u at the interior nodes.
  std::vector<double> gamma;
};

/// Evaluates gamma = L1 u by central differences and checks the sign pattern:
/// one positive arc (y0, y1) strictly inside the domain, gamma <= 0 outside it,
/// gamma < 0 at both ends.
inline GammaReport gamma_structure(const Profile& u, const FactorPair& fp) {
  const Grid& g = u.grid;
  require(g.kind() != GridKind::Ball, ErrorKind::InvalidInput, "gamma structure needs a grid with two boundary ends");
  const std::size_t n = g.size();
  require(n >= 2, ErrorKind::InvalidInput, "profile too short");
  require(fp.l1.lengths_equal(n), ErrorKind::InvalidInput, "factor pair is not sampled on this grid");
  require(u.sup_norm() >= 1e-13, ErrorKind::DegenerateInput, "u vanishes identically");

  const double h = g.h();
  // Extended samples: boundary node, interior nodes, boundary node; ghosts mirror the first interior values.
  auto at = [&](long k) -> double {
    if (k == -1) return u[0];
    if (k == 0 || k == static_cast<long>(n) + 1) return 0.0;
    if (k == static_cast<long>(n) + 2) return u[n - 1];
    return u[static_cast<std::size_t>(k - 1)];
  };
  GammaReport rep;
  rep.gamma.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const long k = static_cast<long>(j) + 1;
    const double d2 = (at(k + 1) - 2.0 * at(k) + at(k - 1)) / (h * h);
    const double d1 = (at(k + 1) - at(k - 1)) / (2.0 * h);
    rep.gamma[j] = fp.l1.a[j] * d2 + fp.l1.b[j] * d1 + fp.l1.c[j] * u[j];
  }
  // At the ends u = u' = 0, so gamma = a1 u''; a1 is taken from the adjacent node.
  const BoundaryCurvature curv = boundary_second_derivatives(u);
  rep.gamma_boundary = {fp.l1.a.front() * curv.inner.value_or(0.0), fp.l1.a.back() * curv.outer};

  std::vector<double> xs(n + 2), gs(n + 2);
  xs.front() = g.left();
  xs.back() = 1.0;
  gs.front() = rep.gamma_boundary.first;
  gs.back() = rep.gamma_boundary.second;
  for (std::size_t j = 0; j < n; ++j) {
    xs[j + 1] = g.node(j);
    gs[j + 1] = rep.gamma[j];
  }

  // Positive runs; runs separated only by exact zeros are one arc.
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    if (!(gs[k] > 0.0)) continue;
    if (!arcs.empty()) {
      bool zeros_only = true;
      for (std::size_t m = arcs.back().second + 1; m < k; ++m) zeros_only = zeros_only && gs[m] == 0.0;
      if (zeros_only) {
        arcs.back().second = k;
        continue;
      }
    }
    arcs.emplace_back(k, k);
  }
  rep.positive_arcs = arcs.size();
  if (arcs.size() == 1) {
    const auto [first, last] = arcs.front();
    auto crossing = [&](std::size_t lo, std::size_t hi) {
      const double t = gs[lo] / (gs[lo] - gs[hi]);
      return xs[lo] + t * (xs[hi] - xs[lo]);
    };
    if (first > 0) rep.y0 = crossing(first - 1, first);
    if (last + 1 < gs.size()) rep.y1 = crossing(last, last + 1);
  }
  rep.pattern_valid = arcs.size() == 1 && rep.y0 && rep.y1 && rep.gamma_boundary.first < 0.0 &&
                      rep.gamma_boundary.second < 0.0 && *rep.y0 > g.left() && *rep.y0 < *rep.y1 && *rep.y1 < 1.0;
  return rep;
}

/// lambda <= 0, or 0 < lambda < (a^2 + pi^2)/4.
inline bool in_theorem_region(double a, double lambda) {
  return lambda <= 0.0 || lambda < anti_diffusive_threshold(a);
}

struct RegionCell {
  double a = 0.0;
  double lambda = 0.0;
  double min_green = std::numeric_limits<double>::quiet_NaN();
  bool in_theorem_region = false;
  Verdict verdict = Verdict::Singular;
  /// Verdict of a violated theorem-region cell recomputed on 2n nodes.
  std::optional<Verdict> refined_verdict;
};

/// Sign check of u'''' + a u''' + lambda u'' on the interval with n nodes.
inline RegionCell evaluate_cell(double a, double lambda, std::size_t n, double tol) {
  RegionCell cell;
  cell.a = a;
  cell.lambda = lambda;
  cell.in_theorem_region = in_theorem_region(a, lambda);
  const Grid g = Grid::interval(n);
  try {
    const SignReport rep = check_sign_preserving(assemble_1d(FourthOrderCoeffs::constant(n, 1.0, a, lambda, 0, 0), g), g, tol);
    cell.min_green = rep.min_green_normalized;
    cell.verdict = rep.verdict;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularSystem) throw;
    cell.verdict = Verdict::Singular;
  }
  return cell;
}

/// steps == 1 gives the single value lo.
inline std::vector<double> lattice(double lo, double hi, std::size_t steps) {
  require(steps >= 1, ErrorKind::InvalidInput, "lattice needs at least one step");
  require(steps > 1 || lo == hi, ErrorKind::InvalidInput, "a single-point lattice needs lo == hi");
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i)
    out[i] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  return out;
}

/// Rows in a-major order; each a gets its own lambda lattice.
inline std::vector<RegionCell> region_map(std::span<const double> a_values,
                                          const std::function<std::vector<double>(double)>& lambdas_for,
                                          std::size_t n, double tol = kDefaultSignTolerance) {
  std::vector<RegionCell> rows;
  for (double a : a_values) {
    for (double lambda : lambdas_for(a)) {
      RegionCell cell = evaluate_cell(a, lambda, n, tol);
      if (cell.in_theorem_region && cell.verdict != Verdict::SignPreserving)
        cell.refined_verdict = evaluate_cell(a, lambda, 2 * n, tol).verdict;
      rows.push_back(cell);
    }
  }
  return rows;
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

inline std::vector<RegionCell> region_map(Range a_range, Range lambda_range, std::size_t steps, std::size_t n,
                                          double tol = kDefaultSignTolerance) {
  const std::vector<double> as = lattice(a_range.lo, a_range.hi, steps);
  const std::vector<double> ls = lattice(lambda_range.lo, lambda_range.hi, steps);
  return region_map(as, [&](double) { return ls; }, n, tol);
}

}  // namespace signpres
