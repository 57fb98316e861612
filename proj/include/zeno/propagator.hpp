#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "zeno/errors.hpp"
#include "zeno/fourier.hpp"
#include "zeno/grid.hpp"
#include "zeno/operators.hpp"

namespace zeno {

// Exact-in-time evolution  U(t) = exp(-i H t), realized by exponentiating in
// a diagonalizing basis: Fourier modes for spectral operators, the cached
// eigenbasis for dense ones. No time-stepping integrator is involved, so the
// only error is round-off.
struct propagator {
  hamiltonian_op H;
  spectrum eig;  // filled for dense sources
};

// Prepares a propagator; dense sources are eigendecomposed once here
// (resource- and hermiticity-guarded by eigendecompose).
inline propagator make_propagator(const hamiltonian_op& H) {
  propagator p;
  p.H = H;
  if (!H.spectral) p.eig = eigendecompose(H);
  return p;
}

// Applies H itself (not its exponential) to a state; useful for energy
// expectations.
inline state_vector apply_hamiltonian(const hamiltonian_op& H,
                                      const state_vector& s) {
  require_same_grid(H.grid, s.grid, "apply_hamiltonian");
  if (H.spectral) {
    Eigen::VectorXcd u = H.gauge.conjugate().cwiseProduct(s.amp);
    Eigen::VectorXcd hat = fft_forward(u);
    hat = hat.cwiseProduct(H.multiplier.cast<complexd>());
    return state_vector{s.grid, H.gauge.cwiseProduct(fft_inverse(hat))};
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(s.amp.size());
  if (H.support.empty()) {
    out = H.dense * s.amp;
  } else {
    const int m = static_cast<int>(H.support.size());
    Eigen::VectorXcd sub(m);
    for (int j = 0; j < m; ++j) sub(j) = s.amp(H.support[j]);
    Eigen::VectorXcd res = H.dense * sub;
    for (int j = 0; j < m; ++j) out(H.support[j]) = res(j);
  }
  return state_vector{s.grid, std::move(out)};
}

// Real energy expectation <psi|H|psi> / <psi|psi>.
inline double energy_expectation(const hamiltonian_op& H,
                                 const state_vector& s) {
  return inner(s, apply_hamiltonian(H, s)).real() / norm2(s);
}

// U(t) psi. Negative t runs the evolution backwards. Off-support amplitudes
// of a restricted dense operator are left untouched (the exponential of a
// matrix that is zero there acts as the identity).
inline state_vector evolve(const propagator& p, const state_vector& s,
                           double t) {
  require_same_grid(p.H.grid, s.grid, "evolve");
  if (!std::isfinite(t)) throw parameter_error("evolve: time must be finite");
  if (p.H.spectral) {
    Eigen::VectorXcd u = p.H.gauge.conjugate().cwiseProduct(s.amp);
    Eigen::VectorXcd hat = fft_forward(u);
    for (int j = 0; j < hat.size(); ++j)
      hat(j) *= std::polar(1.0, -p.H.multiplier(j) * t);
    return state_vector{s.grid, p.H.gauge.cwiseProduct(fft_inverse(hat))};
  }
  const Eigen::VectorXd& lam = p.eig.eigenvalues;
  const Eigen::MatrixXcd& Q = p.eig.eigenvectors;
  Eigen::VectorXcd phase(lam.size());
  for (int j = 0; j < lam.size(); ++j) phase(j) = std::polar(1.0, -lam(j) * t);
  if (p.H.support.empty()) {
    Eigen::VectorXcd coef = Q.adjoint() * s.amp;
    return state_vector{s.grid, Q * phase.cwiseProduct(coef)};
  }
  const int m = static_cast<int>(p.H.support.size());
  Eigen::VectorXcd sub(m);
  for (int j = 0; j < m; ++j) sub(j) = s.amp(p.H.support[j]);
  Eigen::VectorXcd coef = Q.adjoint() * sub;
  Eigen::VectorXcd evolved = Q * phase.cwiseProduct(coef);
  state_vector out{s.grid, s.amp};
  for (int j = 0; j < m; ++j) out.amp(p.H.support[j]) = evolved(j);
  return out;
}

// Round-trip defect ||U(-t) U(t) psi - psi||; a direct unitarity diagnostic,
// expected below 1e-9 for every Hermitian source.
inline double evolve_reverse_check(const propagator& p, const state_vector& s,
                                   double t) {
  state_vector back = evolve(p, evolve(p, s, t), -t);
  return std::sqrt((back.amp - s.amp).squaredNorm() * s.grid.spacing());
}

}  // namespace zeno
