#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "signpres/banded.hpp"

using namespace signpres;

namespace {

BandedMatrix random_pentadiagonal(std::size_t n, double shift, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  BandedMatrix m(n, 2, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i > 2 ? i - 2 : 0); j <= std::min(n - 1, i + 2); ++j)
      m.at(i, j) = dist(rng) + (i == j ? shift : 0.0);
  return m;
}

std::vector<std::vector<double>> to_dense(const BandedMatrix& m) {
  std::vector<std::vector<double>> a(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = m(i, j);
  return a;
}

}  // namespace

TEST(BandedMatrix, OutOfBandEntriesAreZeroAndNotWritable) {
  BandedMatrix m(6, 2, 1);
  m.at(3, 1) = 4.0;
  EXPECT_EQ(m(3, 1), 4.0);
  EXPECT_EQ(m(0, 5), 0.0);
  EXPECT_THROW(m.at(0, 2), Error);
  EXPECT_THROW(m.at(5, 2), Error);
}

TEST(BandedLU, DiagonalSystemReturnsScaledRhs) {
  BandedMatrix m(5, 2, 2);
  for (std::size_t i = 0; i < 5; ++i) m.at(i, i) = 1.0;
  const std::vector<double> f{1, -2, 3, -4, 5};
  EXPECT_EQ(BandedLU(m).solve(f), f);
}

TEST(BandedLU, MatchesDenseGaussianEliminationOnShiftedPentadiagonal) {
  std::mt19937 rng(20240611);
  const std::size_t n = 16;
  const BandedMatrix m = random_pentadiagonal(n, 5.0, rng);
  std::vector<double> f(n);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : f) v = dist(rng);
  const auto x = BandedLU(m).solve(f);
  const auto ref = oracle::dense_solve(to_dense(m), f);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref[i], 1e-10);
}

TEST(BandedLU, PivotingHandlesZeroDiagonal) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 12;
    BandedMatrix m = random_pentadiagonal(n, 0.0, rng);
    m.at(0, 0) = 0.0;
    m.at(5, 5) = 0.0;
    std::vector<double> f(n, 1.0);
    std::vector<double> ref;
    try {
      ref = oracle::dense_solve(to_dense(m), f);
    } catch (const std::runtime_error&) {
      continue;
    }
    const auto x = BandedLU(m).solve(f);
    const auto back = m.multiply(x);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(back[i], 1.0, 1e-8);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref[i], 1e-8 * (1.0 + std::abs(ref[i])));
  }
}

TEST(BandedLU, ResidualBound) {
  std::mt19937 rng(3);
  const std::size_t n = 64;
  const BandedMatrix m = random_pentadiagonal(n, 4.5, rng);
  std::vector<double> f(n);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : f) v = dist(rng);
  const auto x = BandedLU(m).solve(f);
  const auto r = m.multiply(x);
  double res = 0.0, xn = 0.0, fn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    res = std::max(res, std::abs(r[i] - f[i]));
    xn = std::max(xn, std::abs(x[i]));
    fn = std::max(fn, std::abs(f[i]));
  }
  EXPECT_LE(res, 1e-10 * (m.norm_inf() * xn + fn));
}

TEST(BandedLU, SingularMatrixIsDetected) {
  BandedMatrix m(4, 1, 1);
  for (std::size_t i = 0; i < 4; ++i) m.at(i, i) = 1.0;
  m.at(2, 2) = 0.0;
  m.at(2, 1) = 0.0;
  m.at(2, 3) = 0.0;
  try {
    BandedLU lu(m);
    FAIL() << "expected SingularSystem";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularSystem);
  }
}
