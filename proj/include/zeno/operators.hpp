#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "zeno/errors.hpp"
#include "zeno/fourier.hpp"
#include "zeno/grid.hpp"

namespace zeno {

// Largest dense matrix dimension the library will materialize or
// eigendecompose. Beyond this, dense work is refused with resource_error.
inline constexpr int kDenseDimensionLimit = 4096;

// Operator families.
//   free_line           : kinetic energy k^2/(2m) on the full (periodized) line
//   momentum            : k, the generator of rigid rightward translation
//   momentum_quadratic  : k^2 + k (the m = 1/2 kinetic term plus momentum)
//   free_dirichlet      : kinetic energy with hard walls at the box ends
enum class variant { free_line, momentum, momentum_quadratic, free_dirichlet };

// Boundary realizations.
//   full_line_box   : periodic box standing in for the real line
//   dirichlet       : wavefunction pinned to zero at both box ends
//   periodic_phase  : periodic up to a fixed phase, psi(x_min) = psi(x_max) e^{i alpha}
enum class boundary { full_line_box, dirichlet, periodic_phase };

struct hamiltonian_spec {
  variant v = variant::free_line;
  boundary b = boundary::full_line_box;
  double mass = 1.0;   // used by free_line / free_dirichlet
  double alpha = 0.0;  // used by periodic_phase, in [0, 2*pi)
};

inline void validate_spec(const hamiltonian_spec& s) {
  const bool massive = s.v == variant::free_line || s.v == variant::free_dirichlet;
  if (massive && !(s.mass > 0.0))
    throw parameter_error("hamiltonian_spec: mass must be positive");
  if (s.v == variant::free_dirichlet && s.b != boundary::dirichlet)
    throw config_error("hamiltonian_spec: free_dirichlet requires dirichlet boundary");
  if (s.b == boundary::periodic_phase && s.v != variant::momentum)
    throw config_error("hamiltonian_spec: periodic_phase applies only to momentum");
  if (s.b == boundary::periodic_phase &&
      (s.alpha < 0.0 || s.alpha >= 2.0 * std::numbers::pi))
    throw parameter_error("hamiltonian_spec: alpha must lie in [0, 2*pi)");
}

inline const char* variant_name(variant v) {
  switch (v) {
    case variant::free_line: return "free_line";
    case variant::momentum: return "momentum";
    case variant::momentum_quadratic: return "momentum_quadratic";
    case variant::free_dirichlet: return "free_dirichlet";
  }
  return "?";
}

// A Hamiltonian realized either as a diagonal Fourier multiplier (spectral,
// periodic grids) or as a dense Hermitian matrix on a set of grid sites.
//
// Spectral realizations act as  psi -> gauge . IFFT( exp-multiplier . FFT( conj(gauge) . psi ) );
// the gauge column is all-ones except for the twisted boundary, where it
// carries exp(-i alpha (x - x_min)/L) and the multiplier is evaluated at the
// shifted wavenumbers k - alpha/L.
//
// Dense realizations store the matrix restricted to `support` (global site
// indices, ascending); an empty support means all sites. Off-support sites are
// untouched by the operator (its rows and columns there are zero).
struct hamiltonian_op {
  grid1d grid;
  hamiltonian_spec spec;
  bool spectral = true;
  Eigen::VectorXd multiplier;  // spectral only, per FFT bin
  Eigen::VectorXcd gauge;      // spectral only, unit-modulus per site
  Eigen::MatrixXcd dense;      // dense only
  std::vector<int> support;    // dense only; empty = every site
  bool hermitian = true;

  int dense_dim() const {
    return support.empty() ? grid.n_points : static_cast<int>(support.size());
  }
};

namespace detail {

inline double multiplier_value(const hamiltonian_spec& s, double k) {
  switch (s.v) {
    case variant::free_line: return k * k / (2.0 * s.mass);
    case variant::momentum: return k;
    case variant::momentum_quadratic: return k * k + k;
    case variant::free_dirichlet: break;
  }
  throw config_error("multiplier_value: variant has no spectral realization");
}

// Hermitian-symmetrized first circulant column of the dense realization of a
// real Fourier multiplier: H[a][b] = c[(a-b) mod n]. The symmetrization
// removes FFT round-off so the assembled matrix is Hermitian to the bit.
inline Eigen::VectorXcd circulant_column(const Eigen::VectorXd& multiplier) {
  const int n = static_cast<int>(multiplier.size());
  Eigen::VectorXcd c = fft_inverse(multiplier.cast<complexd>());
  Eigen::VectorXcd sym(n);
  sym(0) = complexd(c(0).real(), 0.0);
  for (int d = 1; d < n; ++d)
    sym(d) = 0.5 * (c(d) + std::conj(c(n - d)));
  return sym;
}

// Dense entry (a, b) of a spectral operator: circulant column value at the
// wrapped separation, times the gauge phase at the *signed* separation
// (cos/sin are even/odd to the bit, so the result is exactly Hermitian).
inline complexd spectral_entry(const Eigen::VectorXcd& c, int n, double alpha,
                               double h_over_L, int a, int b) {
  const int d = a - b;
  complexd v = c(((d % n) + n) % n);
  if (alpha != 0.0) v *= std::polar(1.0, -alpha * h_over_L * d);
  return v;
}

inline Eigen::MatrixXcd fd_free_dirichlet(const grid1d& g, double mass) {
  const int n = g.n_points;
  const double h = g.spacing();
  const double w = 1.0 / (2.0 * mass * h * h);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    H(j, j) = 2.0 * w;
    if (j + 1 < n) {
      H(j, j + 1) = -w;
      H(j + 1, j) = -w;
    }
  }
  return H;
}

inline Eigen::MatrixXcd fd_momentum_quadratic_dirichlet(const grid1d& g) {
  const int n = g.n_points;
  const double h = g.spacing();
  const double w2 = 1.0 / (h * h);       // -d^2/dx^2 (the m = 1/2 kinetic term)
  const double w1 = 1.0 / (2.0 * h);     // -i d/dx, central difference
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  const complexd i_unit(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    H(j, j) = 2.0 * w2;
    if (j + 1 < n) {
      H(j, j + 1) = complexd(-w2, 0.0) - i_unit * w1;
      H(j + 1, j) = complexd(-w2, 0.0) + i_unit * w1;
    }
  }
  return H;
}

}  // namespace detail

// Builds the requested operator on the given grid.
// Spectral variants need a periodic grid; Dirichlet variants need a bounded
// (interior-point) grid. Mismatches raise config_error.
inline hamiltonian_op build_hamiltonian(const grid1d& g,
                                        const hamiltonian_spec& s) {
  validate_spec(s);
  hamiltonian_op op;
  op.grid = g;
  op.spec = s;
  if (s.b == boundary::dirichlet) {
    if (g.periodic)
      throw config_error("build_hamiltonian: dirichlet boundary needs a bounded grid");
    op.spectral = false;
    if (s.v == variant::free_dirichlet)
      op.dense = detail::fd_free_dirichlet(g, s.mass);
    else if (s.v == variant::momentum_quadratic)
      op.dense = detail::fd_momentum_quadratic_dirichlet(g);
    else
      throw config_error("build_hamiltonian: unsupported dirichlet variant");
    op.hermitian = true;
    return op;
  }
  if (!g.periodic)
    throw config_error("build_hamiltonian: spectral variants need a periodic grid");
  const int n = g.n_points;
  const double shift =
      (s.b == boundary::periodic_phase) ? s.alpha / g.length() : 0.0;
  Eigen::VectorXd k = fft_wavenumbers(n, g.length());
  op.multiplier.resize(n);
  for (int j = 0; j < n; ++j)
    op.multiplier(j) = detail::multiplier_value(s, k(j) - shift);
  op.gauge = Eigen::VectorXcd::Ones(n);
  if (shift != 0.0)
    for (int j = 0; j < n; ++j)
      op.gauge(j) = std::polar(1.0, -s.alpha * (g.point(j) - g.x_min) / g.length());
  op.spectral = true;
  op.hermitian = true;  // multipliers are real
  return op;
}

// Restriction of the operator to the snapped region sites: rows and columns
// outside the region are dropped (equivalently, masked to zero). Hermiticity
// is preserved. Spectral sources are assembled entry-wise from the circulant
// column, so the full dense matrix is never materialized.
inline hamiltonian_op compress(const hamiltonian_op& H, const region& r) {
  auto [lo, hi] = region_index_span(H.grid, r);
  hamiltonian_op out;
  out.grid = H.grid;
  out.spec = H.spec;
  out.spectral = false;
  out.hermitian = H.hermitian;
  if (H.spectral) {
    const int n = H.grid.n_points;
    const int m = hi - lo + 1;
    if (m > kDenseDimensionLimit)
      throw resource_error("compress: region spans more sites than the dense limit");
    const Eigen::VectorXcd c = detail::circulant_column(H.multiplier);
    const double h_over_L = H.grid.spacing() / H.grid.length();
    const double alpha =
        (H.spec.b == boundary::periodic_phase) ? H.spec.alpha : 0.0;
    out.dense.resize(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        out.dense(a, b) =
            detail::spectral_entry(c, n, alpha, h_over_L, lo + a, lo + b);
    out.support.resize(m);
    for (int j = 0; j < m; ++j) out.support[j] = lo + j;
    return out;
  }
  // Dense source: keep the support sites that fall inside the snapped region,
  // tracking their row positions within the stored dense block.
  std::vector<int> sites;  // global grid indices of the surviving sites
  std::vector<int> rows;   // their positions in H.dense
  if (H.support.empty()) {
    for (int j = lo; j <= hi; ++j) {
      sites.push_back(j);
      rows.push_back(j);
    }
  } else {
    for (int p = 0; p < static_cast<int>(H.support.size()); ++p)
      if (H.support[p] >= lo && H.support[p] <= hi) {
        sites.push_back(H.support[p]);
        rows.push_back(p);
      }
  }
  if (sites.empty())
    throw parameter_error("compress: snapped region contains no operator sites");
  const int m = static_cast<int>(sites.size());
  out.dense.resize(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.dense(a, b) = H.dense(rows[a], rows[b]);
  out.support = sites;
  return out;
}

// Full dense matrix of the operator on every grid site.
// Refused beyond the dense dimension limit.
inline Eigen::MatrixXcd dense_realization(const hamiltonian_op& H) {
  if (!H.spectral) {
    if (!H.support.empty())
      throw parameter_error(
          "dense_realization: operator is restricted to a sub-region; its "
          "matrix is the stored dense block");
    return H.dense;
  }
  const int n = H.grid.n_points;
  if (n > kDenseDimensionLimit)
    throw resource_error("dense_realization: grid exceeds the dense limit of " +
                         std::to_string(kDenseDimensionLimit) + " points");
  return compress(H, region{H.grid.x_min, H.grid.x_max}).dense;
}

// Ascending eigenvalues with orthonormal eigenvector columns.
struct spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

inline double hermiticity_defect(const Eigen::MatrixXcd& M) {
  return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

// Dense Hermitian eigendecomposition. Spectral operators must be compressed
// or densified first; non-Hermitian matrices are refused. Pass
// with_vectors = false to skip the eigenvector accumulation (roughly half the
// work for large matrices); eigenvectors is then empty.
inline spectrum eigendecompose(const hamiltonian_op& H,
                               bool with_vectors = true) {
  if (H.spectral)
    throw parameter_error(
        "eigendecompose: needs a dense realization; compress() the operator "
        "or call dense_realization() first");
  if (H.dense_dim() > kDenseDimensionLimit)
    throw resource_error("eigendecompose: matrix exceeds the dense limit");
  if (!H.hermitian || hermiticity_defect(H.dense) > 1e-10)
    throw parameter_error("eigendecompose: refusing a non-Hermitian matrix");
  const int opts = with_vectors ? Eigen::ComputeEigenvectors
                                : Eigen::EigenvaluesOnly;
  spectrum out;
  if (H.dense.imag().cwiseAbs().maxCoeff() == 0.0) {
    // Real symmetric fast path (the hard-wall kinetic matrices are real).
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.dense.real(), opts);
    if (es.info() != Eigen::Success)
      throw error("eigendecompose: solver did not converge");
    out.eigenvalues = es.eigenvalues();
    if (with_vectors) out.eigenvectors = es.eigenvectors().cast<complexd>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense, opts);
    if (es.info() != Eigen::Success)
      throw error("eigendecompose: solver did not converge");
    out.eigenvalues = es.eigenvalues();
    if (with_vectors) out.eigenvectors = es.eigenvectors();
  }
  return out;
}

// Closed-form spectra on the unit interval [0, 1] for the families that have
// them:
//   free_dirichlet(m)                 : n^2 pi^2 / (2m), n = 1..count
//   momentum_quadratic + dirichlet    : n^2 pi^2 - 1/4, n = 1..count
//       (substituting psi = e^{-ix/2} u turns k^2 + k into k^2 - 1/4 with the
//        boundary values untouched)
//   momentum + periodic_phase(alpha)  : 2 pi n - alpha over a centered window
//                                       of signed mode numbers, ascending
inline std::vector<double> analytic_spectrum(const hamiltonian_spec& s,
                                             int count) {
  validate_spec(s);
  if (count < 1) throw parameter_error("analytic_spectrum: count must be >= 1");
  const double pi = std::numbers::pi;
  std::vector<double> out;
  out.reserve(count);
  if (s.v == variant::free_dirichlet) {
    for (int n = 1; n <= count; ++n)
      out.push_back(n * n * pi * pi / (2.0 * s.mass));
    return out;
  }
  if (s.v == variant::momentum_quadratic && s.b == boundary::dirichlet) {
    for (int n = 1; n <= count; ++n) out.push_back(n * n * pi * pi - 0.25);
    return out;
  }
  if (s.v == variant::momentum && s.b == boundary::periodic_phase) {
    const int n0 = -((count - 1) / 2);
    for (int j = 0; j < count; ++j)
      out.push_back(2.0 * pi * (n0 + j) - s.alpha);
    return out;
  }
  throw parameter_error("analytic_spectrum: no closed form for this family");
}

}  // namespace zeno
