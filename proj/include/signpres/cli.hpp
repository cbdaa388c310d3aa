#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// that it can be exercised in-process.
//
// Exit codes: 0 success, 2 invalid input or usage, 3 numerical failure,
// 4 data outcome flagged by --strict (Violated verdict, diverged branch point).

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "signpres/cone_projection.hpp"
#include "signpres/fd_solver.hpp"
#include "signpres/io.hpp"
#include "signpres/operator_core.hpp"
#include "signpres/semilinear.hpp"
#include "signpres/sign_verify.hpp"
#include "signpres/spectral.hpp"
#include "signpres/willmore.hpp"

namespace signpres::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitStrict = 4;

namespace detail {

/// Writes to `path` if given, otherwise to `fallback`.
inline void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path);
  require(file.good(), ErrorKind::InvalidInput, "cannot write '" + path + "'");
  body(file);
  require(file.good(), ErrorKind::InvalidInput, "write to '" + path + "' failed");
}

inline void write_profile(std::ostream& os, const Profile& p, const char* name) {
  io::CsvWriter csv(os, {"x", name});
  for (std::size_t j = 0; j < p.size(); ++j) csv.row({p.grid.node(j), p[j]});
}

inline const char* boolean(bool b) { return b ? "true" : "false"; }

/// Radial operator flags shared by several subcommands.
struct RadialFlags {
  double bigB = 1.0;
  double bigT = 0.0;
  int dim = 1;
  std::size_t n = 128;
  std::optional<double> rho;

  void attach(CLI::App* sc, bool with_rho = true) {
    sc->add_option("--B", bigB, "bending stiffness B > 0")->capture_default_str();
    sc->add_option("--T", bigT, "tension T >= 0")->capture_default_str();
    sc->add_option("--dim", dim, "space dimension (1 = interval)")->capture_default_str();
    sc->add_option("--n", n, "number of interior nodes")->capture_default_str();
    if (with_rho) sc->add_option("--rho", rho, "inner radius; selects the annulus (rho, 1)");
  }

  Grid grid() const {
    require(dim >= 1, ErrorKind::InvalidInput, "dimension must be >= 1");
    return rho ? Grid::annulus(*rho, dim, n) : Grid::ball(dim, n);
  }
};

/// Either u'''' + a u''' + lambda u'' on the interval (--a, --lambda) or the
/// radial B Delta^2 - T Delta (--B, --T, --dim, --rho).
struct OperatorFlags {
  double a = 0.0;
  double lambda = 0.0;
  RadialFlags radial;
  CLI::Option* a_opt = nullptr;
  CLI::Option* lambda_opt = nullptr;
  std::vector<CLI::Option*> radial_opts;

  void attach(CLI::App* sc) {
    a_opt = sc->add_option("--a", a, "coefficient of u'''")->capture_default_str();
    lambda_opt = sc->add_option("--lambda", lambda, "coefficient of u''")->capture_default_str();
    radial_opts.push_back(sc->add_option("--B", radial.bigB, "radial mode: bending stiffness"));
    radial_opts.push_back(sc->add_option("--T", radial.bigT, "radial mode: tension"));
    radial_opts.push_back(sc->add_option("--dim", radial.dim, "radial mode: dimension"));
    radial_opts.push_back(sc->add_option("--rho", radial.rho, "radial mode: inner radius of an annulus"));
    sc->add_option("--n", radial.n, "number of interior nodes")->capture_default_str();
  }

  bool is_radial() const {
    return std::any_of(radial_opts.begin(), radial_opts.end(), [](CLI::Option* o) { return o->count() > 0; });
  }

  void check_exclusive() const {
    require(!(is_radial() && (a_opt->count() || lambda_opt->count())), ErrorKind::InvalidInput,
            "--a/--lambda and --B/--T/--dim/--rho select different operators; use one set");
  }

  Grid grid() const { return is_radial() ? radial.grid() : Grid::interval(radial.n); }

  BandedMatrix matrix(const Grid& g) const {
    check_exclusive();
    if (is_radial()) return assemble_radial(radial.bigB, radial.bigT, g);
    return assemble_1d(FourthOrderCoeffs::constant(g.size(), 1.0, a, lambda, 0.0, 0.0), g);
  }
};

/// Trivial split for lambda <= 0, the anti-diffusive one inside its range.
inline std::optional<FactorPair> factorization_for(double a, double lambda, const Grid& g) {
  if (lambda <= 0.0) return trivial_factor(a, lambda, g);
  if (lambda < anti_diffusive_threshold(a)) return factor_anti_diffusive(a, lambda, g);
  return std::nullopt;
}

inline double max_abs(const std::vector<double>& v, double target) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - target));
  return m;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sign-preserving fourth-order clamped boundary-value problems"};
  app.name("signpres");
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);

  std::function<int()> action;
  auto on = [&](CLI::App* sc, std::function<int()> body) { sc->callback([&action, body] { action = body; }); };

  // compose ------------------------------------------------------------------
  struct {
    double a = 0, lambda = 0;
    std::size_t n = 128;
    std::string dump;
  } compose_f;
  auto* compose_c = app.add_subcommand("compose", "compose the factorization of u'''' + a u''' + lambda u''");
  compose_c->add_option("--a", compose_f.a)->capture_default_str();
  compose_c->add_option("--lambda", compose_f.lambda)->capture_default_str();
  compose_c->add_option("--n", compose_f.n)->capture_default_str();
  compose_c->add_option("--dump", compose_f.dump, "write x,a4,a3,a2,a1,a0 CSV here");
  on(compose_c, [&] {
    const Grid g = Grid::interval(compose_f.n);
    const auto fp = detail::factorization_for(compose_f.a, compose_f.lambda, g);
    require(fp.has_value(), ErrorKind::OutOfRange, "no factorization available for lambda >= (a^2 + pi^2)/4");
    const FourthOrderCoeffs c = compose(*fp, g);
    double deviation = 0.0;
    for (const auto& [vals, target] : {std::pair{&c.a4, 1.0}, std::pair{&c.a3, compose_f.a},
                                       std::pair{&c.a2, compose_f.lambda}, std::pair{&c.a1, 0.0}, std::pair{&c.a0, 0.0}})
      deviation = std::max(deviation, detail::max_abs(*vals, target));
    if (!compose_f.dump.empty()) {
      detail::emit(compose_f.dump, out, [&](std::ostream& os) {
        io::CsvWriter csv(os, {"x", "a4", "a3", "a2", "a1", "a0"});
        for (std::size_t j = 0; j < g.size(); ++j) csv.row({g.node(j), c.a4[j], c.a3[j], c.a2[j], c.a1[j], c.a0[j]});
      });
    }
    out << io::JsonObject()
               .add("factorization", compose_f.lambda <= 0.0 ? "trivial" : "anti_diffusive")
               .add("eta", fp->eta)
               .add("min_a4", *std::min_element(c.a4.begin(), c.a4.end()))
               .add("max_deviation", deviation)
               .str()
        << '\n';
    return kExitOk;
  });

  // factor -------------------------------------------------------------------
  struct {
    double a = 0, lambda = 0;
    std::size_t n = 128;
    std::string out;
  } factor_f;
  auto* factor_c = app.add_subcommand("factor", "factor u'''' + a u''' + lambda u'' into two second-order operators");
  factor_c->add_option("--a", factor_f.a)->capture_default_str();
  factor_c->add_option("--lambda", factor_f.lambda)->capture_default_str();
  factor_c->add_option("--n", factor_f.n)->capture_default_str();
  factor_c->add_option("--out", factor_f.out, "write x,a1,b1,c1,a2,b2,c2 CSV here");
  on(factor_c, [&] {
    const Grid g = Grid::interval(factor_f.n);
    const bool trivial = factor_f.lambda <= 0.0;
    const FactorPair fp = trivial ? trivial_factor(factor_f.a, factor_f.lambda, g)
                                  : factor_anti_diffusive(factor_f.a, factor_f.lambda, g);
    double ode = 0.0;
    if (!trivial) {
      for (double x : g.nodes()) {
        const WeightSample s = anti_diffusive_weight(factor_f.a, factor_f.lambda, x);
        ode = std::max(ode, std::abs(s.ddp + factor_f.a * s.dp + factor_f.lambda * s.p) /
                                std::max({std::abs(s.ddp), std::abs(factor_f.a * s.dp), std::abs(factor_f.lambda * s.p)}));
      }
    }
    if (!factor_f.out.empty()) {
      detail::emit(factor_f.out, out, [&](std::ostream& os) {
        io::CsvWriter csv(os, {"x", "a1", "b1", "c1", "a2", "b2", "c2"});
        for (std::size_t j = 0; j < g.size(); ++j)
          csv.row({g.node(j), fp.l1.a[j], fp.l1.b[j], fp.l1.c[j], fp.l2.a[j], fp.l2.b[j], fp.l2.c[j]});
      });
    }
    io::JsonObject j;
    j.add("factorization", trivial ? "trivial" : "anti_diffusive");
    if (trivial) j.add_null("branch");
    else j.add("branch", to_string(weight_branch(factor_f.a, factor_f.lambda)));
    out << j.add("eta", fp.eta).add("max_ode_residual", ode).str() << '\n';
    return kExitOk;
  });

  // solve1d / solveradial ------------------------------------------------------
  struct {
    double a = 0, lambda = 0;
    std::size_t n = 128;
    std::string rhs, out;
  } solve1d_f;
  auto* solve1d_c = app.add_subcommand("solve1d", "solve u'''' + a u''' + lambda u'' = f, clamped on (-1, 1)");
  solve1d_c->add_option("--a", solve1d_f.a)->capture_default_str();
  solve1d_c->add_option("--lambda", solve1d_f.lambda)->capture_default_str();
  solve1d_c->add_option("--n", solve1d_f.n)->capture_default_str();
  solve1d_c->add_option("--rhs", solve1d_f.rhs, "const:<value> or CSV with columns x,f")->required();
  solve1d_c->add_option("--out", solve1d_f.out, "x,u CSV (default: standard output)");
  on(solve1d_c, [&] {
    const Grid g = Grid::interval(solve1d_f.n);
    const BandedMatrix m = assemble_1d(FourthOrderCoeffs::constant(g.size(), 1.0, solve1d_f.a, solve1d_f.lambda, 0, 0), g);
    const Profile u = solve(m, io::load_profile(solve1d_f.rhs, g, "f"));
    detail::emit(solve1d_f.out, out, [&](std::ostream& os) { detail::write_profile(os, u, "u"); });
    return kExitOk;
  });

  struct {
    detail::RadialFlags op;
    std::string rhs, out;
  } radial_f;
  auto* radial_c = app.add_subcommand("solveradial", "solve B Delta^2 U - T Delta U = f for radial U");
  radial_f.op.attach(radial_c);
  radial_c->add_option("--rhs", radial_f.rhs, "const:<value> or CSV with columns x,f")->required();
  radial_c->add_option("--out", radial_f.out, "x,u CSV (default: standard output)");
  on(radial_c, [&] {
    const Grid g = radial_f.op.grid();
    const Profile u = solve(assemble_radial(radial_f.op.bigB, radial_f.op.bigT, g), io::load_profile(radial_f.rhs, g, "f"));
    detail::emit(radial_f.out, out, [&](std::ostream& os) { detail::write_profile(os, u, "u"); });
    return kExitOk;
  });

  // green ----------------------------------------------------------------------
  struct {
    detail::OperatorFlags op;
    std::string out;
  } green_f;
  auto* green_c = app.add_subcommand("green", "dense discrete Green matrix");
  green_f.op.attach(green_c);
  green_c->add_option("--out", green_f.out, "matrix CSV; nodes in the first row and column")->required();
  on(green_c, [&] {
    const Grid g = green_f.op.grid();
    const Eigen::MatrixXd G = green_matrix(green_f.op.matrix(g), g);
    detail::emit(green_f.out, out, [&](std::ostream& os) {
      std::vector<std::string> header{"x"};
      for (double x : g.nodes()) header.push_back(io::format_number(x));
      io::CsvWriter csv(os, header);
      for (Eigen::Index i = 0; i < G.rows(); ++i) {
        std::vector<double> row{g.node(static_cast<std::size_t>(i))};
        for (Eigen::Index j = 0; j < G.cols(); ++j) row.push_back(G(i, j));
        csv.row(row);
      }
    });
    out << io::JsonObject().add("n", g.size()).add("min_entry", G.minCoeff()).add("max_entry", G.maxCoeff()).str()
        << '\n';
    return kExitOk;
  });

  // check ----------------------------------------------------------------------
  struct {
    detail::OperatorFlags op;
    double tol = kDefaultSignTolerance;
    bool strict = false;
  } check_f;
  auto* check_c = app.add_subcommand("check", "Green-matrix sign check and boundary curvature for f = -1");
  check_f.op.attach(check_c);
  check_c->add_option("--tol", check_f.tol, "relative tolerance for negative entries")->capture_default_str();
  check_c->add_flag("--strict", check_f.strict, "exit 4 when the verdict is Violated");
  on(check_c, [&] {
    const Grid g = check_f.op.grid();
    const BandedMatrix m = check_f.op.matrix(g);
    const SignReport rep = check_sign_preserving(m, g, check_f.tol);
    io::JsonObject j;
    j.add("verdict", to_string(rep.verdict)).add("min_green_normalized", rep.min_green_normalized);
    j.add("min_location", std::vector<double>{static_cast<double>(rep.min_location.row),
                                              static_cast<double>(rep.min_location.col)});
    if (rep.violation_location)
      j.add("violation_location", std::vector<double>{static_cast<double>(rep.violation_location->row),
                                                      static_cast<double>(rep.violation_location->col)});
    else
      j.add_null("violation_location");
    j.add("u2_inner", rep.boundary_second_derivatives.inner).add("u2_outer", rep.boundary_second_derivatives.outer);
    j.add("solution_negative", rep.solution_negative).add("solution_max", rep.solution_max);
    std::optional<FactorPair> fp;
    if (!check_f.op.is_radial()) fp = detail::factorization_for(check_f.op.a, check_f.op.lambda, g);
    if (fp) {
      const GammaReport gr = gamma_structure(solve(m, Profile::constant(g, -1.0)), *fp);
      j.add("gamma", io::JsonObject()
                         .add("pattern_valid", gr.pattern_valid)
                         .add("positive_arcs", gr.positive_arcs)
                         .add("y0", gr.y0)
                         .add("y1", gr.y1)
                         .add("gamma_left", gr.gamma_boundary.first)
                         .add("gamma_right", gr.gamma_boundary.second));
    } else {
      j.add_null("gamma");
    }
    out << j.str() << '\n';
    return check_f.strict && rep.verdict == Verdict::Violated ? kExitStrict : kExitOk;
  });

  // regionmap --------------------------------------------------------------------
  struct {
    double a_min = -3, a_max = 3, l_min = -10, l_max = 10;
    std::optional<double> l_max_fraction;
    std::size_t steps = 21, n = 128;
    double tol = kDefaultSignTolerance;
    bool strict = false;
    std::string out;
  } map_f;
  auto* map_c = app.add_subcommand("regionmap", "sign check over an (a, lambda) lattice");
  map_c->add_option("--a-min", map_f.a_min)->capture_default_str();
  map_c->add_option("--a-max", map_f.a_max)->capture_default_str();
  map_c->add_option("--l-min", map_f.l_min)->capture_default_str();
  auto* lmax = map_c->add_option("--l-max", map_f.l_max)->capture_default_str();
  map_c->add_option("--l-max-fraction", map_f.l_max_fraction,
                    "per-row upper lambda = fraction * (a^2 + pi^2)/4 instead of --l-max")
      ->excludes(lmax);
  map_c->add_option("--steps", map_f.steps, "lattice points per axis")->capture_default_str();
  map_c->add_option("--n", map_f.n)->capture_default_str();
  map_c->add_option("--tol", map_f.tol)->capture_default_str();
  map_c->add_flag("--strict", map_f.strict, "exit 4 when any cell is Violated");
  map_c->add_option("--out", map_f.out, "CSV destination (default: standard output)");
  on(map_c, [&] {
    const std::vector<double> as = lattice(map_f.a_min, map_f.a_max, map_f.steps);
    auto lambdas = [&](double a) {
      const double hi = map_f.l_max_fraction ? *map_f.l_max_fraction * anti_diffusive_threshold(a) : map_f.l_max;
      return lattice(map_f.l_min, hi, map_f.steps);
    };
    const std::vector<RegionCell> cells = region_map(as, lambdas, map_f.n, map_f.tol);
    bool violated = false;
    detail::emit(map_f.out, out, [&](std::ostream& os) {
      io::CsvWriter csv(os, {"a", "lambda", "min_green", "in_theorem_region", "verdict"});
      for (const RegionCell& c : cells) {
        csv.row({io::format_number(c.a), io::format_number(c.lambda), io::format_number(c.min_green),
                 detail::boolean(c.in_theorem_region), std::string(to_string(c.verdict))});
        violated = violated || c.verdict == Verdict::Violated;
        if (c.refined_verdict) {
          err << "grid artifact: a=" << io::format_number(c.a) << " lambda=" << io::format_number(c.lambda) << " is "
              << to_string(c.verdict) << " at n=" << map_f.n << ", " << to_string(*c.refined_verdict)
              << " at n=" << 2 * map_f.n << '\n';
        }
      }
    });
    return map_f.strict && violated ? kExitStrict : kExitOk;
  });

  // eigen ----------------------------------------------------------------------------
  struct {
    detail::RadialFlags op;
    EigenOptions opt;
    std::string phi;
  } eigen_f;
  auto* eigen_c = app.add_subcommand("eigen", "principal eigenpair of B Delta^2 - T Delta");
  eigen_f.op.attach(eigen_c);
  eigen_c->add_option("--tol", eigen_f.opt.tol, "relative change of the Rayleigh quotient")->capture_default_str();
  eigen_c->add_option("--maxit", eigen_f.opt.maxit)->capture_default_str();
  eigen_c->add_option("--phi", eigen_f.phi, "write x,phi CSV here");
  on(eigen_c, [&] {
    const Grid g = eigen_f.op.grid();
    const EigenPair ep = principal_eigenpair(assemble_radial(eigen_f.op.bigB, eigen_f.op.bigT, g), g, eigen_f.opt);
    if (!eigen_f.phi.empty())
      detail::emit(eigen_f.phi, out, [&](std::ostream& os) { detail::write_profile(os, ep.phi1, "phi"); });
    out << io::JsonObject().add("mu1", ep.mu1).add("iterations", ep.iterations).add("residual", ep.residual).str()
        << '\n';
    return kExitOk;
  });

  // mems --------------------------------------------------------------------------------
  struct {
    detail::RadialFlags op{1.0, 1.0, 1, 128, std::nullopt};
    std::vector<double> lambdas;
    bool find = false;
    double hi0 = 1.0, tol_lambda = 1e-4;
    MonotoneOptions opt;
    bool strict = false;
    std::string out;
  } mems_f;
  auto* mems_c = app.add_subcommand("mems", "monotone iteration for B Delta^2 u - T Delta u = -lambda/(1+u)^2");
  mems_f.op.attach(mems_c, false);
  auto* lam = mems_c->add_option("--lambda", mems_f.lambdas, "branch values (repeatable, ascending)");
  mems_c->add_flag("--find-lambda-star", mems_f.find, "bracket the pull-in value instead")->excludes(lam);
  mems_c->add_option("--lambda-hi0", mems_f.hi0, "initial guess for the bracket")->capture_default_str();
  mems_c->add_option("--tol-lambda", mems_f.tol_lambda, "bracket width")->capture_default_str();
  mems_c->add_option("--tol", mems_f.opt.tol)->capture_default_str();
  mems_c->add_option("--maxit", mems_f.opt.maxit)->capture_default_str();
  mems_c->add_flag("--strict", mems_f.strict, "exit 4 when a branch point does not converge");
  mems_c->add_option("--out", mems_f.out, "CSV destination (default: standard output)");
  on(mems_c, [&] {
    const SemilinearProblem p(mems_f.op.bigB, mems_f.op.bigT, mems_f.op.grid(),
                              [](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); }, {-1.0, 1.0}, 1.0);
    if (mems_f.find) {
      const LambdaBracket br = lambda_star_bracket(p, mems_f.hi0, mems_f.tol_lambda, mems_f.opt);
      out << io::JsonObject().add("lo", br.lo).add("hi", br.hi).add("bound", lambda_star_bound(p)).str() << '\n';
      return kExitOk;
    }
    require(!mems_f.lambdas.empty(), ErrorKind::InvalidInput, "give --lambda values or --find-lambda-star");
    const BranchSweep sweep = branch_sweep(p, mems_f.lambdas, mems_f.opt);
    bool diverged = false;
    detail::emit(mems_f.out, out, [&](std::ostream& os) {
      io::CsvWriter csv(os, {"lambda", "converged", "iterations", "min_u"});
      for (const BranchPoint& bp : sweep.points) {
        csv.row({io::format_number(bp.lambda), detail::boolean(bp.converged), std::to_string(bp.iterations),
                 io::format_number(bp.min_u)});
        diverged = diverged || !bp.converged;
      }
    });
    for (std::size_t i : sweep.violations)
      err << "branch not decreasing between lambda=" << io::format_number(sweep.points[i].lambda)
          << " and lambda=" << io::format_number(sweep.points[i + 1].lambda) << '\n';
    return mems_f.strict && (diverged || !sweep.violations.empty()) ? kExitStrict : kExitOk;
  });

  // willmore -------------------------------------------------------------------------------
  struct {
    double alpha = 2.5, bigB = 1.0, bigT = 0.0;
    std::size_t n = 128;
    WillmoreOptions opt;
    std::string rhs, out;
  } will_f;
  auto* will_c = app.add_subcommand("willmore", "Newton solve of the one-dimensional Willmore-type equation");
  will_c->add_option("--alpha", will_f.alpha)->capture_default_str();
  will_c->add_option("--B", will_f.bigB)->capture_default_str();
  will_c->add_option("--T", will_f.bigT)->capture_default_str();
  will_c->add_option("--n", will_f.n)->capture_default_str();
  will_c->add_option("--tol", will_f.opt.tol)->capture_default_str();
  will_c->add_option("--maxit", will_f.opt.maxit)->capture_default_str();
  will_c->add_option("--rhs", will_f.rhs, "const:<value> or CSV with columns x,f")->required();
  will_c->add_option("--out", will_f.out, "x,u CSV (default: standard output)");
  on(will_c, [&] {
    const Grid g = Grid::interval(will_f.n);
    const WillmoreProblem p{will_f.bigB, will_f.bigT, will_f.alpha, io::load_profile(will_f.rhs, g, "f")};
    const WillmoreSolution s = willmore_solve(p, will_f.opt);
    detail::emit(will_f.out, out, [&](std::ostream& os) { detail::write_profile(os, s.u, "u"); });
    return kExitOk;
  });

  // moreau -----------------------------------------------------------------------------------
  struct {
    double bigB = 1.0, bigT = 0.0, tol = 1e-12;
    std::size_t n = 128;
    std::string input, out;
  } moreau_f;
  auto* moreau_c = app.add_subcommand("moreau", "split u = v + w with v >= 0 in the energy inner product");
  moreau_c->add_option("--B", moreau_f.bigB)->capture_default_str();
  moreau_c->add_option("--T", moreau_f.bigT)->capture_default_str();
  moreau_c->add_option("--n", moreau_f.n)->capture_default_str();
  moreau_c->add_option("--tol", moreau_f.tol, "relative multiplier tolerance")->capture_default_str();
  moreau_c->add_option("--input", moreau_f.input, "CSV with columns x,u")->required();
  moreau_c->add_option("--out", moreau_f.out, "x,u,v,w CSV destination")->required();
  on(moreau_c, [&] {
    const Grid g = Grid::interval(moreau_f.n);
    const Profile u = io::profile_from_csv(io::read_csv_file(moreau_f.input), g, "u");
    const EnergyInnerProduct ip(moreau_f.bigB, moreau_f.bigT, g);
    const MoreauSplit s = project_cone(u, ip, moreau_f.tol);
    detail::emit(moreau_f.out, out, [&](std::ostream& os) {
      io::CsvWriter csv(os, {"x", "u", "v", "w"});
      for (std::size_t j = 0; j < g.size(); ++j) csv.row({g.node(j), u[j], s.v[j], s.w[j]});
    });
    out << io::JsonObject().add("gap", s.gap).add("iterations", s.iterations).str() << '\n';
    return kExitOk;
  });

  // version -----------------------------------------------------------------------------------
  auto* version_c = app.add_subcommand("version", "print the version");
  on(version_c, [&] {
    out << "signpres " << kVersion << '\n';
    return kExitOk;
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return action ? action() : kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.kind()) ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

inline int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace signpres::cli
