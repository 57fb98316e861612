#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>

#include "zeno/errors.hpp"

namespace zeno {

// Brute-force finite-dimensional machinery: dense projected-evolution
// products and their closed-form limits, used as independent oracles for the
// grid-based engine and as the canonical regression anchor (the two-level
// system, whose product survival is available in closed form).

// exp(-i H t) for a dense Hermitian matrix, via full eigendecomposition.
inline Eigen::MatrixXcd matrix_unitary(const Eigen::MatrixXcd& H, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success)
    throw error("matrix_unitary: eigensolver did not converge");
  const Eigen::VectorXd& lam = es.eigenvalues();
  Eigen::VectorXcd phase(lam.size());
  for (int j = 0; j < lam.size(); ++j)
    phase(j) = std::polar(1.0, -lam(j) * t);
  return es.eigenvectors() * phase.asDiagonal() *
         es.eigenvectors().adjoint();
}

// The N-step projected-evolution product  [E U(T/N) E]^N  with E the diagonal
// 0/1 mask, computed by plain repeated multiplication.
inline Eigen::MatrixXcd matrix_zeno_product(const Eigen::MatrixXcd& H,
                                            const Eigen::VectorXd& mask,
                                            double T, int N) {
  if (N < 1) throw parameter_error("matrix_zeno_product: N must be >= 1");
  if (mask.size() != H.rows())
    throw shape_error("matrix_zeno_product: mask size mismatch");
  const Eigen::MatrixXcd E =
      mask.cast<std::complex<double>>().asDiagonal().toDenseMatrix();
  const Eigen::MatrixXcd step = E * matrix_unitary(H, T / N) * E;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(H.rows(), H.cols());
  for (int j = 0; j < N; ++j) out = step * out;
  return out;
}

// The product's N -> infinity limit  exp(-i T EHE) E.
inline Eigen::MatrixXcd matrix_zeno_limit(const Eigen::MatrixXcd& H,
                                          const Eigen::VectorXd& mask,
                                          double T) {
  if (mask.size() != H.rows())
    throw shape_error("matrix_zeno_limit: mask size mismatch");
  const Eigen::MatrixXcd E =
      mask.cast<std::complex<double>>().asDiagonal().toDenseMatrix();
  return matrix_unitary(E * H * E, T) * E;
}

// Operator 2-norm distance ||A - B|| (largest singular value).
inline double operator_distance(const Eigen::MatrixXcd& A,
                                const Eigen::MatrixXcd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw shape_error("operator_distance: shape mismatch");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A - B);
  return svd.singularValues()(0);
}

// Two-level anchor: H swaps the basis states, the mask keeps the first one.
// One projected step contributes an amplitude factor cos(T/N), so the
// survival probability after N steps is cos(T/N)^(2N) exactly.
inline double two_level_survival(double T, int N) {
  if (N < 1) throw parameter_error("two_level_survival: N must be >= 1");
  return std::pow(std::cos(T / N), 2 * N);
}

inline Eigen::MatrixXcd two_level_hamiltonian() {
  Eigen::MatrixXcd H(2, 2);
  H << 0.0, 1.0, 1.0, 0.0;
  return H;
}

inline Eigen::VectorXd two_level_mask() {
  Eigen::VectorXd m(2);
  m << 1.0, 0.0;
  return m;
}

}  // namespace zeno
