#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "signpres/operator_core.hpp"

using namespace signpres;

namespace {

constexpr double kPi = std::numbers::pi;

/// Dense polynomial with coefficients in increasing degree.
struct Poly {
  std::vector<double> c;
  double operator()(double x) const {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
    return s;
  }
  Poly d() const {
    Poly out{{0.0}};
    if (c.size() <= 1) return out;
    out.c.assign(c.size() - 1, 0.0);
    for (std::size_t k = 1; k < c.size(); ++k) out.c[k - 1] = static_cast<double>(k) * c[k];
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out{std::vector<double>(a.c.size() + b.c.size() - 1, 0.0)};
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    return out;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly out{std::vector<double>(std::max(a.c.size(), b.c.size()), 0.0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) out.c[i] += b.c[i];
    return out;
  }
};

SecondOrderCoeffs sample(const Grid& g, const Poly& a, const Poly& b, const Poly& c) {
  SecondOrderCoeffs s = SecondOrderCoeffs::constant(g.size(), 0, 0, 0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.node(j);
    s.a[j] = a(x), s.da[j] = a.d()(x), s.dda[j] = a.d().d()(x);
    s.b[j] = b(x), s.db[j] = b.d()(x), s.ddb[j] = b.d().d()(x);
    s.c[j] = c(x), s.dc[j] = c.d()(x), s.ddc[j] = c.d().d()(x);
  }
  return s;
}

void expect_constant_coeffs(const FourthOrderCoeffs& f, double a4, double a3, double a2, double a1, double a0,
                            double tol) {
  for (std::size_t j = 0; j < f.size(); ++j) {
    EXPECT_NEAR(f.a4[j], a4, tol) << "node " << j;
    EXPECT_NEAR(f.a3[j], a3, tol) << "node " << j;
    EXPECT_NEAR(f.a2[j], a2, tol) << "node " << j;
    EXPECT_NEAR(f.a1[j], a1, tol) << "node " << j;
    EXPECT_NEAR(f.a0[j], a0, tol) << "node " << j;
  }
}

}  // namespace

TEST(Compose, IdentityFactorsGiveBiharmonic) {
  const Grid g = Grid::interval(9);
  const FactorPair fp{SecondOrderCoeffs::constant(9, 1, 0, 0), SecondOrderCoeffs::constant(9, 1, 0, 0), 1.0};
  expect_constant_coeffs(compose(fp, g), 1, 0, 0, 0, 0, 0.0);
}

TEST(Compose, AgreesWithNestedApplicationOnPolynomials) {
  // L2(L1 u) evaluated by exact polynomial differentiation versus sum A_k u^(k).
  const Poly a1{{1, 0, 1}}, b1{{0, 1}}, c1{{0, 0, -1}};
  const Poly a2{{2, 1}}, b2{{0, 0, 0, 1}}, c2{{-1}};
  const Poly u{{0, 0, 1, 0, 0, 1}};
  const Poly gamma = a1 * u.d().d() + b1 * u.d() + c1 * u;
  const Poly lu = a2 * gamma.d().d() + b2 * gamma.d() + c2 * gamma;

  const Grid g = Grid::interval(15);
  const FactorPair fp{sample(g, a1, b1, c1), sample(g, a2, b2, c2), 1.0};
  const FourthOrderCoeffs f = compose(fp, g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.node(j);
    const Poly d1 = u.d(), d2 = d1.d(), d3 = d2.d(), d4 = d3.d();
    const double composed = f.a4[j] * d4(x) + f.a3[j] * d3(x) + f.a2[j] * d2(x) + f.a1[j] * d1(x) + f.a0[j] * u(x);
    EXPECT_NEAR(composed, lu(x), 1e-11 * (1.0 + std::abs(lu(x))));
  }
}

TEST(Compose, LengthMismatchIsInvalidInput) {
  const Grid g = Grid::interval(8);
  const FactorPair fp{SecondOrderCoeffs::constant(7, 1, 0, 0), SecondOrderCoeffs::constant(8, 1, 0, 0), 1.0};
  try {
    compose(fp, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(TrivialFactor, ComposesToOriginalOperatorExactly) {
  const Grid g = Grid::interval(33);
  for (auto [a, lambda] : {std::pair{0.0, 0.0}, {5.0, -2.0}, {-3.25, -0.125}, {1e-3, -7.5}}) {
    const FactorPair fp = trivial_factor(a, lambda, g);
    EXPECT_NO_THROW(fp.validate(g.size()));
    EXPECT_EQ(fp.eta, 1.0);
    const FourthOrderCoeffs f = compose(fp, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      EXPECT_EQ(f.a4[j], 1.0);
      EXPECT_EQ(f.a3[j], a);
      EXPECT_EQ(f.a2[j], lambda);
      EXPECT_EQ(f.a1[j], 0.0);
      EXPECT_EQ(f.a0[j], 0.0);
    }
  }
}

TEST(TrivialFactor, SecondFactorCarriesParameters) {
  const Grid g = Grid::interval(5);
  const FactorPair fp = trivial_factor(5.0, -2.0, g);
  EXPECT_EQ(fp.l2.a[2], 1.0);
  EXPECT_EQ(fp.l2.b[2], 5.0);
  EXPECT_EQ(fp.l2.c[2], -2.0);
  EXPECT_LE(fp.l2.max_c(), 0.0);
}

TEST(TrivialFactor, PositiveLambdaRejected) {
  try {
    trivial_factor(0.0, 0.1, Grid::interval(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(AntiDiffusive, OscillatoryBranchIsCosine) {
  const Grid g = Grid::interval(41);
  const FactorPair fp = factor_anti_diffusive(0.0, 1.0, g);
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(fp.l2.a[j], std::cos(g.node(j)), 1e-15);
  EXPECT_GT(std::cos(1.0), 0.0);
  EXPECT_EQ(weight_branch(0.0, 1.0), WeightBranch::Oscillatory);
}

TEST(AntiDiffusive, CriticalBranch) {
  const Grid g = Grid::interval(41);
  ASSERT_EQ(weight_branch(2.0, 1.0), WeightBranch::Critical);
  const FactorPair fp = factor_anti_diffusive(2.0, 1.0, g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.node(j);
    EXPECT_NEAR(fp.l2.a[j], (2.0 + x) * std::exp(-x), 1e-14);
    EXPECT_GT(fp.l2.a[j], 0.0);
  }
}

TEST(AntiDiffusive, ExponentialBranch) {
  const Grid g = Grid::interval(41);
  ASSERT_EQ(weight_branch(3.0, 1.0), WeightBranch::Exponential);
  const FactorPair fp = factor_anti_diffusive(3.0, 1.0, g);
  const double k = (3.0 + std::sqrt(5.0)) / 2.0;
  for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(fp.l2.a[j], std::exp(-k * g.node(j)), 1e-13);
}

TEST(AntiDiffusive, ComposesBackToConstantCoefficients) {
  const Grid g = Grid::interval(64);
  expect_constant_coeffs(compose(factor_anti_diffusive(2.0, 3.0, g), g), 1, 2, 3, 0, 0, 1e-10);
}

TEST(AntiDiffusive, OutsideRangeIsRejected) {
  const Grid g = Grid::interval(16);
  for (double lambda : {kPi * kPi / 4.0 + 0.01, 0.0, -1.0, kPi * kPi / 4.0}) {
    try {
      factor_anti_diffusive(0.0, lambda, g);
      FAIL() << lambda;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
    }
  }
  EXPECT_THROW(factor_anti_diffusive(0.0, 1.0, Grid::ball(2, 16)), Error);
}

TEST(AntiDiffusive, DerivativesMatchFiniteDifferencesOfWeight) {
  for (auto [a, lambda] : {std::pair{0.0, 2.0}, {2.0, 1.0}, {-3.0, 1.5}, {1.0, 2.5}}) {
    for (double x : {-0.9, -0.2, 0.4, 0.95}) {
      const double dx = 1e-5;
      const auto s = anti_diffusive_weight(a, lambda, x);
      const auto sp = anti_diffusive_weight(a, lambda, x + dx);
      const auto sm = anti_diffusive_weight(a, lambda, x - dx);
      EXPECT_NEAR(s.dp, (sp.p - sm.p) / (2 * dx), 1e-8 * (1 + std::abs(s.dp)));
      EXPECT_NEAR(s.ddp, (sp.dp - sm.dp) / (2 * dx), 1e-8 * (1 + std::abs(s.ddp)));
      EXPECT_NEAR(s.dddp, (sp.ddp - sm.ddp) / (2 * dx), 1e-8 * (1 + std::abs(s.dddp)));
    }
  }
}

TEST(AntiDiffusiveProperty, OdeIdentityRoundTripAndEllipticity) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Grid g = Grid::interval(57);
  for (int trial = 0; trial < 300; ++trial) {
    const double a = -4.0 + 8.0 * unit(rng);
    double lambda = 0.0;
    switch (trial % 3) {
      case 0: lambda = (0.02 + 0.96 * unit(rng)) * a * a / 4.0; break;
      case 1: lambda = a * a / 4.0; break;
      default:
        lambda = a * a / 4.0 + (0.01 + 0.98 * unit(rng)) * (anti_diffusive_threshold(a) - a * a / 4.0);
    }
    if (!(lambda > 0.0)) continue;
    const FactorPair fp = factor_anti_diffusive(a, lambda, g);
    ASSERT_NO_THROW(fp.validate(g.size()));
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto s = anti_diffusive_weight(a, lambda, g.node(j));
      const double scale = std::abs(s.ddp) + std::abs(a * s.dp) + std::abs(lambda * s.p);
      EXPECT_LE(std::abs(s.ddp + a * s.dp + lambda * s.p), 1e-9 * scale);
    }
    const FourthOrderCoeffs f = compose(fp, g);
    expect_constant_coeffs(f, 1.0, a, lambda, 0.0, 0.0, 1e-8);
    for (double v : f.a4) EXPECT_GE(v, fp.eta * fp.eta - 1e-12);
  }
}

TEST(FactorPairValidation, DetectsBadDeclarations) {
  const Grid g = Grid::interval(6);
  FactorPair fp = trivial_factor(1.0, -1.0, g);
  fp.eta = 2.0;
  EXPECT_THROW(fp.validate(g.size()), Error);
  fp.eta = 1.0;
  fp.l1.c[3] = 0.5;
  EXPECT_THROW(fp.validate(g.size()), Error);
  fp.l1.c[3] = 0.0;
  fp.l2.a.pop_back();
  EXPECT_THROW(fp.validate(g.size()), Error);
}
