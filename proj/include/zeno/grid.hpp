#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <iostream>
#include <string>
#include <utility>

#include "zeno/errors.hpp"

namespace zeno {

using complexd = std::complex<double>;

// ---------------------------------------------------------------------------
// Uniform 1-D grid over [x_min, x_max].
//
// Two sampling conventions, chosen by the `periodic` flag:
//   * periodic:  h = L/n,      x_j = x_min + j*h        (right endpoint omitted,
//                                                        it aliases the left one)
//   * bounded:   h = L/(n+1),  x_j = x_min + (j+1)*h    (interior points only;
//                                                        both endpoints carry an
//                                                        implicit zero boundary value)
// ---------------------------------------------------------------------------
struct grid1d {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_points = 0;
  bool periodic = true;

  double length() const { return x_max - x_min; }
  double spacing() const {
    return periodic ? length() / n_points : length() / (n_points + 1);
  }
  double point(int j) const {
    return periodic ? x_min + j * spacing() : x_min + (j + 1) * spacing();
  }

  bool operator==(const grid1d&) const = default;
};

// Builds a grid, validating bounds and size.
// Throws parameter_error for non-finite bounds, x_min >= x_max, or n < 2.
inline grid1d make_grid(double x_min, double x_max, int n, bool periodic) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max))
    throw parameter_error("make_grid: bounds must be finite");
  if (!(x_min < x_max))
    throw parameter_error("make_grid: x_min must be strictly below x_max");
  if (n < 2) throw parameter_error("make_grid: need at least 2 points");
  return grid1d{x_min, x_max, n, periodic};
}

// A complex amplitude vector tied to the grid it was sampled on.
struct state_vector {
  grid1d grid;
  Eigen::VectorXcd amp;
};

inline void require_same_grid(const grid1d& a, const grid1d& b,
                              const char* what) {
  if (!(a == b))
    throw shape_error(std::string(what) + ": operands live on different grids");
}

// h-weighted inner product  sum_j conj(a_j) b_j * h.
// Conjugate-symmetric: inner(a,b) == conj(inner(b,a)).
inline complexd inner(const state_vector& a, const state_vector& b) {
  require_same_grid(a.grid, b.grid, "inner");
  return a.amp.dot(b.amp) * a.grid.spacing();  // Eigen's dot conjugates the left factor
}

// Squared h-weighted norm; real and non-negative by construction.
inline double norm2(const state_vector& s) {
  return s.amp.squaredNorm() * s.grid.spacing();
}

inline double norm(const state_vector& s) { return std::sqrt(norm2(s)); }

// ---------------------------------------------------------------------------
// Interval region [a, b] inside the grid box. Endpoints snap to the nearest
// grid point; the resulting mask includes both snapped endpoints.
// ---------------------------------------------------------------------------
struct region {
  double a = 0.0;
  double b = 1.0;
};

namespace detail {
// Index of the grid point nearest to position p, clamped into range.
inline int nearest_index(const grid1d& g, double p) {
  const double h = g.spacing();
  const double offset = g.periodic ? 0.0 : 1.0;
  int j = static_cast<int>(std::lround((p - g.x_min) / h - offset));
  if (j < 0) j = 0;
  if (j > g.n_points - 1) j = g.n_points - 1;
  return j;
}
}  // namespace detail

inline void validate_region(const grid1d& g, const region& r) {
  if (!std::isfinite(r.a) || !std::isfinite(r.b))
    throw parameter_error("region: endpoints must be finite");
  if (!(r.a < r.b)) throw parameter_error("region: need a < b");
  if (r.a < g.x_min - 1e-12 || r.b > g.x_max + 1e-12)
    throw parameter_error("region: interval must lie inside the grid box");
}

// Snapped index range [first, last] of the region on this grid (inclusive).
inline std::pair<int, int> region_index_span(const grid1d& g, const region& r) {
  validate_region(g, r);
  return {detail::nearest_index(g, r.a), detail::nearest_index(g, r.b)};
}

// 0/1 indicator vector of the snapped region; idempotent under pointwise
// squaring by construction.
inline Eigen::VectorXd region_mask(const grid1d& g, const region& r) {
  auto [lo, hi] = region_index_span(g, r);
  Eigen::VectorXd m = Eigen::VectorXd::Zero(g.n_points);
  for (int j = lo; j <= hi; ++j) m(j) = 1.0;
  return m;
}

// Pointwise multiplication by the region indicator: the projection onto
// amplitudes supported in the region. Applying it twice equals applying it
// once, amplitude for amplitude.
inline state_vector project(const state_vector& s, const region& r) {
  Eigen::VectorXd m = region_mask(s.grid, r);
  state_vector out{s.grid, s.amp.cwiseProduct(m.cast<complexd>())};
  return out;
}

// Squared norm of the projected state: the probability of finding the state
// inside the region. For a normalized input the value lies in [0, 1] up to
// quadrature rounding.
inline double survival(const state_vector& s, const region& r) {
  return norm2(project(s, r));
}

// Standard normal CDF, used by the Gaussian-mass oracles.
inline double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

// Normalized Gaussian wave packet:
//   psi_j = C * exp(-(x_j - x0)^2 / (4 sigma^2) + i k0 x_j)
// so that |psi|^2 is a Gaussian density with standard deviation sigma.
// Warns on stderr when more than 1e-8 of the analytic mass falls outside the
// box (the box is then too small for the packet to represent a full-line state).
inline state_vector gaussian_packet(const grid1d& g, double x0, double sigma,
                                    double k0) {
  if (!(sigma > 0.0)) throw parameter_error("gaussian_packet: sigma must be positive");
  if (!std::isfinite(x0) || x0 < g.x_min || x0 > g.x_max)
    throw parameter_error("gaussian_packet: x0 must lie inside the grid box");
  const double tail = normal_cdf((g.x_min - x0) / sigma) +
                      normal_cdf((x0 - g.x_max) / sigma);
  if (tail > 1e-8)
    std::cerr << "zeno: warning: gaussian_packet mass outside the box is "
              << tail << " (> 1e-8); the box is too small for this packet\n";
  Eigen::VectorXcd amp(g.n_points);
  for (int j = 0; j < g.n_points; ++j) {
    const double x = g.point(j);
    const double u = (x - x0) / (2.0 * sigma);
    amp(j) = std::polar(std::exp(-u * u), k0 * x);
  }
  state_vector s{g, std::move(amp)};
  const double n2 = norm2(s);
  if (!(n2 > 0.0))
    throw parameter_error("gaussian_packet: packet underflows on this grid");
  s.amp /= std::sqrt(n2);
  return s;
}

}  // namespace zeno
