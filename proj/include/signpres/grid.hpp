#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "signpres/error.hpp"

namespace signpres {

enum class GridKind { Interval, Ball, Annulus };

/// Interior node layout for the clamped problems.
///
/// Interval: x_j = -1 + j h, j = 1..n, h = 2/(n+1); endpoints are nodes 0 and n+1.
/// Ball(d >= 2): staggered r_j = (j - 1/2) h, j = 1..n, h = 1/n; r = 1 lies
///   halfway between r_n and the first exterior node.
/// Annulus(rho): r_j = rho + j h, j = 1..n, h = (1 - rho)/(n+1).
class Grid {
 public:
  static Grid interval(std::size_t n) {
    require(n >= 1, ErrorKind::InvalidInput, "grid needs at least one interior node");
    Grid g;
    g.kind_ = GridKind::Interval;
    g.dim_ = 1;
    g.h_ = 2.0 / static_cast<double>(n + 1);
    g.nodes_.resize(n);
    for (std::size_t j = 0; j < n; ++j) g.nodes_[j] = -1.0 + static_cast<double>(j + 1) * g.h_;
    g.left_ = -1.0;
    return g;
  }

  /// Ball(1) is the interval (-1, 1).
  static Grid ball(int dim, std::size_t n) {
    require(dim >= 1, ErrorKind::InvalidInput, "ball dimension must be >= 1");
    if (dim == 1) return interval(n);
    require(n >= 1, ErrorKind::InvalidInput, "grid needs at least one interior node");
    Grid g;
    g.kind_ = GridKind::Ball;
    g.dim_ = dim;
    g.h_ = 1.0 / static_cast<double>(n);
    g.nodes_.resize(n);
    for (std::size_t j = 0; j < n; ++j) g.nodes_[j] = (static_cast<double>(j) + 0.5) * g.h_;
    g.left_ = 0.0;
    return g;
  }

  static Grid annulus(double rho, int dim, std::size_t n) {
    require(rho > 0.0 && rho < 1.0, ErrorKind::InvalidInput, "annulus needs 0 < rho < 1");
    require(dim >= 1, ErrorKind::InvalidInput, "annulus dimension must be >= 1");
    require(n >= 1, ErrorKind::InvalidInput, "grid needs at least one interior node");
    Grid g;
    g.kind_ = GridKind::Annulus;
    g.dim_ = dim;
    g.rho_ = rho;
    g.h_ = (1.0 - rho) / static_cast<double>(n + 1);
    g.nodes_.resize(n);
    for (std::size_t j = 0; j < n; ++j) g.nodes_[j] = rho + static_cast<double>(j + 1) * g.h_;
    g.left_ = rho;
    return g;
  }

  GridKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  double rho() const noexcept { return rho_; }
  double h() const noexcept { return h_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double node(std::size_t j) const { return nodes_.at(j); }

  /// Left end of the computational interval: -1, 0 (ball centre) or rho.
  double left() const noexcept { return left_; }

  bool is_radial() const noexcept { return kind_ != GridKind::Interval; }

  /// Quadrature weight of node j: h for the interval, h r^(d-1) for radial grids.
  double weight(std::size_t j) const {
    if (kind_ == GridKind::Interval) return h_;
    return h_ * std::pow(nodes_[j], dim_ - 1);
  }

  /// Distance of node j to the boundary of the domain (the origin is not a boundary).
  double boundary_distance(std::size_t j) const {
    const double x = nodes_[j];
    switch (kind_) {
      case GridKind::Interval: return 1.0 - std::abs(x);
      case GridKind::Ball: return 1.0 - x;
      case GridKind::Annulus: return std::min(x - rho_, 1.0 - x);
    }
    return 0.0;
  }

  std::string describe() const {
    switch (kind_) {
      case GridKind::Interval: return "interval(n=" + std::to_string(size()) + ")";
      case GridKind::Ball:
        return "ball(d=" + std::to_string(dim_) + ", n=" + std::to_string(size()) + ")";
      case GridKind::Annulus:
        return "annulus(d=" + std::to_string(dim_) + ", rho=" + std::to_string(rho_) +
               ", n=" + std::to_string(size()) + ")";
    }
    return "grid";
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.kind_ == b.kind_ && a.dim_ == b.dim_ && a.rho_ == b.rho_ && a.nodes_.size() == b.nodes_.size();
  }

 private:
  Grid() = default;

  GridKind kind_ = GridKind::Interval;
  int dim_ = 1;
  double rho_ = 0.0;
  double h_ = 0.0;
  double left_ = -1.0;
  std::vector<double> nodes_;
};

/// Grid-sampled scalar function. Boundary traces are kept for generality and are
/// identically zero for the clamped problems handled here.
struct Profile {
  Grid grid;
  std::vector<double> values;
  std::array<double, 2> boundary_value{0.0, 0.0};
  std::array<double, 2> boundary_slope{0.0, 0.0};

  Profile(Grid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    require(values.size() == grid.size(), ErrorKind::InvalidInput,
            "profile length does not match grid node count");
  }

  static Profile constant(const Grid& g, double value) {
    return Profile(g, std::vector<double>(g.size(), value));
  }

  template <class F>
  static Profile sample(const Grid& g, F&& f) {
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = f(g.node(j));
    return Profile(g, std::move(v));
  }

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t j) const { return values[j]; }

  double sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double min() const { return *std::min_element(values.begin(), values.end()); }
  double max() const { return *std::max_element(values.begin(), values.end()); }
};

inline double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline double sup_distance(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace signpres
