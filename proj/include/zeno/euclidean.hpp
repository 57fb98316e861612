#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "zeno/errors.hpp"
#include "zeno/grid.hpp"

namespace zeno {

// ---------------------------------------------------------------------------
// Imaginary-time (heat-kernel) counterpart of the projected evolution: one
// diffusion step restricted to a region, composed N-fold as a plain matrix
// power, converging to the hard-wall heat kernel.
//
// Sampling: this module samples cell midpoints x_j = x_min + (j + 1/2) h with
// h = L/n (midpoint quadrature; the weight h is folded into the kernel
// entries, so composition is exactly matrix multiplication). The grid argument
// supplies the box and the point count.
// ---------------------------------------------------------------------------

// Midpoint sample positions for the Euclidean module.
inline Eigen::VectorXd euclid_points(const grid1d& g) {
  const double h = g.length() / g.n_points;
  Eigen::VectorXd x(g.n_points);
  for (int j = 0; j < g.n_points; ++j) x(j) = g.x_min + (j + 0.5) * h;
  return x;
}

inline double euclid_spacing(const grid1d& g) {
  return g.length() / g.n_points;
}

struct kernel_matrix {
  grid1d grid;
  region reg;
  double tau_step = 0.0;   // imaginary time of one factor
  int n_steps = 1;         // how many factors the entries represent
  Eigen::MatrixXd entries; // kernel values times the quadrature weight h
};

// One restricted diffusion step:
//   entries(i, j) = chi_A(x_i) * sqrt(m / (2 pi tau)) * exp(-m (x_i - x_j)^2 / (2 tau)) * h
// The indicator multiplies rows only (the outgoing position); initial-state
// masking is the caller's job, matching the product ordering used throughout.
// Requires sqrt(tau/m) >= 2h so one step is resolvable on the grid.
inline kernel_matrix heat_step_kernel(const grid1d& g, const region& r,
                                      double tau, double m) {
  validate_region(g, r);
  if (!(tau > 0.0)) throw parameter_error("heat_step_kernel: tau must be positive");
  if (!(m > 0.0)) throw parameter_error("heat_step_kernel: mass must be positive");
  const double h = euclid_spacing(g);
  if (std::sqrt(tau / m) < 2.0 * h)
    throw resolution_error(
        "heat_step_kernel: sqrt(tau/m) < 2h; refine the grid or enlarge tau");
  const Eigen::VectorXd x = euclid_points(g);
  const int n = g.n_points;
  const double norm = std::sqrt(m / (2.0 * std::numbers::pi * tau));
  kernel_matrix K{g, r, tau, 1, Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i) {
    const bool in = (x(i) >= r.a && x(i) <= r.b);
    if (!in) {
      K.entries.row(i).setZero();
      continue;
    }
    for (int j = 0; j < n; ++j) {
      const double d = x(i) - x(j);
      K.entries(i, j) = norm * std::exp(-m * d * d / (2.0 * tau)) * h;
    }
  }
  return K;
}

// N-fold composition of the step kernel. Because the quadrature weight is
// folded into the entries, composition is exactly the matrix power; the
// result represents the N-step kernel at total time N * tau_step (again times
// the weight h).
inline kernel_matrix wiener_product(const kernel_matrix& K, int N) {
  if (N < 1) throw parameter_error("wiener_product: N must be >= 1");
  kernel_matrix out = K;
  out.n_steps = K.n_steps * N;
  // Exponentiation by squaring keeps the run deterministic and cheap even for
  // the deep ladders used in spectral comparisons.
  Eigen::MatrixXd base = K.entries;
  Eigen::MatrixXd acc =
      Eigen::MatrixXd::Identity(base.rows(), base.cols());
  int e = N;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  out.entries = std::move(acc);
  return out;
}

// Hard-wall diffusion kernel on [0, 1] as a sine series:
//   2 sum_{n=1..terms} sin(n pi x) sin(n pi y) exp(-tau n^2 pi^2 / (2m))
inline double dirichlet_heat_series(double x, double y, double tau, double m,
                                    int terms) {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw parameter_error("dirichlet_heat_series: x, y must lie in [0, 1]");
  if (terms < 1) throw parameter_error("dirichlet_heat_series: terms must be >= 1");
  if (!(m > 0.0)) throw parameter_error("dirichlet_heat_series: mass must be positive");
  const double pi = std::numbers::pi;
  double s = 0.0;
  for (int n = 1; n <= terms; ++n)
    s += 2.0 * std::sin(n * pi * x) * std::sin(n * pi * y) *
         std::exp(-tau * n * n * pi * pi / (2.0 * m));
  return s;
}

// The series kernel sampled like a kernel_matrix (entries carry the weight h),
// for direct distance comparisons against composed step kernels. Requires the
// box to sit inside [0, 1], where the series is defined.
inline kernel_matrix dirichlet_series_kernel(const grid1d& g, const region& r,
                                             double tau_total, double m,
                                             int terms) {
  validate_region(g, r);
  if (g.x_min < -1e-12 || g.x_max > 1.0 + 1e-12)
    throw parameter_error("dirichlet_series_kernel: box must lie inside [0, 1]");
  const Eigen::VectorXd x = euclid_points(g);
  const double h = euclid_spacing(g);
  const int n = g.n_points;
  kernel_matrix K{g, r, tau_total, 1, Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      K.entries(i, j) =
          dirichlet_heat_series(x(i), x(j), tau_total, m, terms) * h;
  return K;
}

// Kernel value with the quadrature weight stripped back off.
inline double kernel_value(const kernel_matrix& K, int i, int j) {
  return K.entries(i, j) / euclid_spacing(K.grid);
}

// Index of the sample point nearest to position p.
inline int euclid_nearest_index(const grid1d& g, double p) {
  const double h = euclid_spacing(g);
  int j = static_cast<int>(std::lround((p - g.x_min) / h - 0.5));
  if (j < 0) j = 0;
  if (j > g.n_points - 1) j = g.n_points - 1;
  return j;
}

// Largest absolute entry difference between two kernels on the same grid and
// region.
inline double kernel_distance(const kernel_matrix& K1,
                              const kernel_matrix& K2) {
  if (!(K1.grid == K2.grid) || K1.reg.a != K2.reg.a || K1.reg.b != K2.reg.b)
    throw shape_error("kernel_distance: kernels live on different grids/regions");
  return (K1.entries - K2.entries).cwiseAbs().maxCoeff();
}

// Row masses (total outgoing weight per source point); restricted kernels
// lose mass through the walls, so these never exceed 1 (up to round-off).
inline Eigen::VectorXd kernel_row_mass(const kernel_matrix& K) {
  return K.entries.rowwise().sum();
}

}  // namespace zeno
