#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "signpres/error.hpp"

namespace signpres {

/// Square band matrix. Entries with j - i outside [-lower, upper] are
/// identically zero and have no storage.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
      : n_(n), kl_(lower), ku_(upper), data_(n * (lower + upper + 1), 0.0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t lower() const noexcept { return kl_; }
  std::size_t upper() const noexcept { return ku_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return i < n_ && j < n_ && j + kl_ >= i && j <= i + ku_;
  }

  double operator()(std::size_t i, std::size_t j) const {
    return in_band(i, j) ? data_[index(i, j)] : 0.0;
  }

  double& at(std::size_t i, std::size_t j) {
    require(in_band(i, j), ErrorKind::InvalidInput,
            "entry (" + std::to_string(i) + "," + std::to_string(j) + ") outside band");
    return data_[index(i, j)];
  }

  std::vector<double> multiply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t j0 = i > kl_ ? i - kl_ : 0;
      const std::size_t j1 = std::min(n_ - 1, i + ku_);
      double s = 0.0;
      for (std::size_t j = j0; j <= j1; ++j) s += data_[index(i, j)] * x[j];
      y[i] = s;
    }
    return y;
  }

  BandedMatrix scaled(double c) const {
    BandedMatrix m = *this;
    for (double& v : m.data_) v *= c;
    return m;
  }

  double norm_inf() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      const std::size_t j0 = i > kl_ ? i - kl_ : 0;
      const std::size_t j1 = std::min(n_ - 1, i + ku_);
      for (std::size_t j = j0; j <= j1; ++j) s += std::abs(data_[index(i, j)]);
      m = std::max(m, s);
    }
    return m;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * (kl_ + ku_ + 1) + (j + kl_ - i);
  }

  std::size_t n_, kl_, ku_;
  std::vector<double> data_;
};

/// Band LU factorization with partial pivoting. Row interchanges widen the
/// upper band of U to lower + upper; that storage is reserved up front.
class BandedLU {
 public:
  static constexpr double kPivotTolerance = 1e-14;

  explicit BandedLU(const BandedMatrix& m)
      : n_(m.size()), kl_(m.lower()), ku_(m.lower() + m.upper()), width_(2 * m.lower() + m.upper() + 1),
        lu_(n_ * width_, 0.0), pivots_(n_), norm_(m.norm_inf()) {
    require(n_ > 0, ErrorKind::InvalidInput, "empty matrix");
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t j0 = i > kl_ ? i - kl_ : 0;
      const std::size_t j1 = std::min(n_ - 1, i + m.upper());
      for (std::size_t j = j0; j <= j1; ++j) ref(i, j) = m(i, j);
    }
    factor();
  }

  std::size_t size() const noexcept { return n_; }

  std::vector<double> solve(std::span<const double> rhs) const {
    require(rhs.size() == n_, ErrorKind::InvalidInput, "right-hand side has wrong length");
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t k = 0; k < n_; ++k) {
      if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
      const std::size_t last = std::min(n_ - 1, k + kl_);
      for (std::size_t i = k + 1; i <= last; ++i) x[i] -= get(i, k) * x[k];
    }
    for (std::size_t k = n_; k-- > 0;) {
      const std::size_t last = std::min(n_ - 1, k + ku_);
      double s = x[k];
      for (std::size_t j = k + 1; j <= last; ++j) s -= get(k, j) * x[j];
      x[k] = s / get(k, k);
    }
    return x;
  }

 private:
  // Row-major band storage, offsets j - i in [-kl, kl + ku_orig].
  double& ref(std::size_t i, std::size_t j) { return lu_[i * width_ + (j + kl_ - i)]; }
  double get(std::size_t i, std::size_t j) const { return lu_[i * width_ + (j + kl_ - i)]; }

  void factor() {
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t last_row = std::min(n_ - 1, k + kl_);
      const std::size_t last_col = std::min(n_ - 1, k + ku_);
      std::size_t p = k;
      double best = std::abs(get(k, k));
      for (std::size_t i = k + 1; i <= last_row; ++i) {
        if (std::abs(get(i, k)) > best) {
          best = std::abs(get(i, k));
          p = i;
        }
      }
      if (!(best >= kPivotTolerance * norm_) || best == 0.0) {
        throw Error(ErrorKind::SingularSystem,
                    "pivot " + std::to_string(best) + " at column " + std::to_string(k) +
                        " below threshold");
      }
      pivots_[k] = p;
      if (p != k) {
        for (std::size_t j = k; j <= last_col; ++j) std::swap(ref(k, j), ref(p, j));
      }
      const double pivot = get(k, k);
      for (std::size_t i = k + 1; i <= last_row; ++i) {
        const double l = get(i, k) / pivot;
        ref(i, k) = l;
        if (l == 0.0) continue;
        for (std::size_t j = k + 1; j <= last_col; ++j) ref(i, j) -= l * get(k, j);
      }
    }
  }

  std::size_t n_, kl_, ku_, width_;
  std::vector<double> lu_;
  std::vector<std::size_t> pivots_;
  double norm_;
};

}  // namespace signpres
