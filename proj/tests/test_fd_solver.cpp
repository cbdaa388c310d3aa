#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "signpres/fd_solver.hpp"

using namespace signpres;

namespace {

double quartic_error(const Grid& g, const BandedMatrix& m, double load, double scale = 1.0) {
  const Profile u = solve(m, Profile::constant(g, load));
  double err = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.node(j);
    err = std::max(err, std::abs(u[j] + scale * (1 - x * x) * (1 - x * x)));
  }
  return err;
}

BandedMatrix biharmonic(const Grid& g) { return assemble_1d(FourthOrderCoeffs::constant(g.size(), 1, 0, 0, 0, 0), g); }

}  // namespace

TEST(Assemble1d, FourNodeBiharmonicStencil) {
  const Grid g = Grid::interval(4);
  const BandedMatrix m = biharmonic(g);
  const double h4 = std::pow(g.h(), 4);
  EXPECT_NEAR(m(0, 0) * h4, 7.0, 1e-12);
  EXPECT_NEAR(m(3, 3) * h4, 7.0, 1e-12);
  EXPECT_NEAR(m(1, 1) * h4, 6.0, 1e-12);
  EXPECT_NEAR(m(0, 1) * h4, -4.0, 1e-12);
  EXPECT_NEAR(m(0, 2) * h4, 1.0, 1e-12);
  EXPECT_EQ(m(0, 3), 0.0);
}

TEST(Assemble1d, TooFewNodes) {
  const Grid g = Grid::interval(3);
  try {
    biharmonic(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Assemble1d, ZeroLoadGivesZeroSolution) {
  const Grid g = Grid::interval(20);
  const Profile u = solve(biharmonic(g), Profile::constant(g, 0.0));
  EXPECT_EQ(u.sup_norm(), 0.0);
}

TEST(Assemble1d, QuarticConvergesAtSecondOrder) {
  double prev = 0.0;
  for (std::size_t n : {32u, 64u, 128u, 256u}) {
    const Grid g = Grid::interval(n);
    const double err = quartic_error(g, biharmonic(g), -24.0);
    if (prev > 0.0) {
      const double ratio = prev / err;
      EXPECT_GE(ratio, 3.6) << n;
      EXPECT_LE(ratio, 4.4) << n;
    }
    prev = err;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(AssembleRadial, BallQuarticConvergesAtSecondOrder) {
  for (int d : {2, 3}) {
    const double load = -8.0 * d * (d + 2);
    double prev = 0.0;
    for (std::size_t n : {32u, 64u, 128u, 256u}) {
      const Grid g = Grid::ball(d, n);
      const double err = quartic_error(g, assemble_radial(1.0, 0.0, g), load);
      if (prev > 0.0) {
        EXPECT_GE(prev / err, 3.6) << "d=" << d << " n=" << n;
        EXPECT_LE(prev / err, 4.4) << "d=" << d << " n=" << n;
      }
      prev = err;
    }
  }
}

TEST(AssembleRadial, DimensionOneIsTheInterval) {
  const Grid g = Grid::ball(1, 24);
  EXPECT_EQ(g.kind(), GridKind::Interval);
  const BandedMatrix radial = assemble_radial(2.0, 3.0, g);
  const BandedMatrix direct = assemble_1d(FourthOrderCoeffs::constant(24, 2.0, 0.0, -3.0, 0.0, 0.0), g);
  for (std::size_t i = 0; i < 24; ++i)
    for (std::size_t j = 0; j < 24; ++j) EXPECT_EQ(radial(i, j), direct(i, j));
}

TEST(AssembleRadial, OneDimensionalAnnulusReproducesShiftedQuartic) {
  const double rho = 0.3;
  double prev = 0.0;
  for (std::size_t n : {32u, 64u, 128u}) {
    const Grid g = Grid::annulus(rho, 1, n);
    const Profile u = solve(assemble_radial(1.0, 0.0, g), Profile::constant(g, 24.0));
    double err = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double r = g.node(j);
      err = std::max(err, std::abs(u[j] - (r - rho) * (r - rho) * (1 - r) * (1 - r)));
    }
    if (prev > 0.0) {
      EXPECT_GE(prev / err, 3.6);
      EXPECT_LE(prev / err, 4.4);
    }
    prev = err;
  }
}

TEST(AssembleRadial, AnnulusSelfConvergence) {
  // Compare interpolation-free: nodes of n and 2n+1 coincide on the annulus.
  auto solve_at = [](std::size_t n) {
    const Grid g = Grid::annulus(0.3, 2, n);
    return solve(assemble_radial(1.0, 1.0, g), Profile::constant(g, -1.0));
  };
  const Profile coarse = solve_at(31), mid = solve_at(63), fine = solve_at(127);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t j = 0; j < 31; ++j) {
    e1 = std::max(e1, std::abs(coarse[j] - mid[2 * j + 1]));
    e2 = std::max(e2, std::abs(mid[2 * j + 1] - fine[4 * j + 3]));
  }
  EXPECT_GT(e1 / e2, 3.5);
  EXPECT_LT(e1 / e2, 4.5);
}

TEST(AssembleRadial, InvalidParameters) {
  const Grid g = Grid::ball(2, 16);
  EXPECT_THROW(assemble_radial(0.0, 1.0, g), Error);
  EXPECT_THROW(assemble_radial(1.0, -1.0, g), Error);
  EXPECT_THROW(assemble_radial(1.0, 0.0, Grid::ball(3, 3)), Error);
  EXPECT_THROW(Grid::ball(0, 8), Error);
  EXPECT_THROW(Grid::annulus(1.2, 2, 8), Error);
  EXPECT_THROW(assemble_1d(FourthOrderCoeffs::constant(16, 1, 0, 0, 0, 0), g), Error);
}

TEST(Solve, LinearInRightHandSide) {
  const Grid g = Grid::ball(2, 40);
  const BandedMatrix m = assemble_radial(1.0, 2.0, g);
  const Profile f1 = Profile::sample(g, [](double r) { return std::cos(3 * r); });
  const Profile f2 = Profile::sample(g, [](double r) { return r * r - 0.5; });
  const double alpha = 1.7, beta = -0.3;
  std::vector<double> comb(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) comb[j] = alpha * f1[j] + beta * f2[j];
  const Profile u1 = solve(m, f1), u2 = solve(m, f2), u = solve(m, Profile(g, comb));
  const double scale = u.sup_norm();
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(u[j], alpha * u1[j] + beta * u2[j], 1e-10 * scale);
}

TEST(Solve, ResidualBoundOnAssembledSystems) {
  for (const Grid& g : {Grid::interval(128), Grid::ball(3, 128), Grid::annulus(0.5, 2, 100)}) {
    const BandedMatrix m = assemble_radial(1.0, 1.0, g);
    const Profile f = Profile::sample(g, [](double x) { return std::sin(5 * x) - 2.0; });
    const Profile u = solve(m, f);
    const auto r = m.multiply(u.values);
    EXPECT_LE(sup_distance(r, f.values), 1e-10 * (m.norm_inf() * u.sup_norm() + f.sup_norm()));
  }
}

TEST(Solve, MatchesDenseOracleForNonSymmetricOperator) {
  const Grid g = Grid::interval(40);
  const BandedMatrix m = assemble_1d(FourthOrderCoeffs::constant(40, 1.0, 2.5, 4.0, 0.0, 0.0), g);
  std::vector<std::vector<double>> dense(40, std::vector<double>(40));
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 40; ++j) dense[i][j] = m(i, j);
  const Profile f = Profile::sample(g, [](double x) { return x - 1.0; });
  const auto ref = oracle::dense_solve(dense, f.values);
  const Profile u = solve(m, f);
  for (std::size_t j = 0; j < 40; ++j) EXPECT_NEAR(u[j], ref[j], 1e-10 * sup_norm(ref));
}

TEST(GreenMatrix, BiharmonicKernelIsPositive) {
  const Grid g = Grid::interval(64);
  const Eigen::MatrixXd G = green_matrix(biharmonic(g), g);
  EXPECT_GT(G.minCoeff(), 0.0);
}

TEST(GreenMatrix, SelfAdjointOperatorGivesSymmetricKernel) {
  const Grid g = Grid::interval(64);
  const Eigen::MatrixXd G = green_matrix(assemble_1d(FourthOrderCoeffs::constant(64, 1, 0, 3, 0, 0), g), g);
  EXPECT_LE((G - G.transpose()).cwiseAbs().maxCoeff(), 1e-8 * G.cwiseAbs().maxCoeff());
}

TEST(GreenMatrix, SingleNode) {
  const Grid g = Grid::interval(1);
  BandedMatrix m(1, 2, 2);
  m.at(0, 0) = 3.0;
  const Eigen::MatrixXd G = green_matrix(m, g);
  EXPECT_DOUBLE_EQ(G(0, 0), 1.0 / (3.0 * g.h()));
}

TEST(GreenMatrix, ReproducesSolutionsByQuadrature) {
  for (const Grid& g : {Grid::interval(50), Grid::ball(2, 50), Grid::annulus(0.3, 2, 50)}) {
    const BandedMatrix m = assemble_radial(1.0, 1.0, g);
    const Eigen::MatrixXd G = green_matrix(m, g);
    const Profile f = Profile::sample(g, [](double x) { return std::exp(x) - 3.0; });
    const Profile u = solve(m, f);
    Eigen::VectorXd hf(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) hf(j) = g.h() * f[j];
    const Eigen::VectorXd gu = G * hf;
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(gu(j), u[j], 1e-9 * u.sup_norm());
  }
}
