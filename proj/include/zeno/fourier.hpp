#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>

#include "zeno/grid.hpp"

namespace zeno {

// Forward discrete Fourier transform (unscaled).
inline Eigen::VectorXcd fft_forward(const Eigen::VectorXcd& v) {
  static thread_local Eigen::FFT<double> engine;
  Eigen::VectorXcd out(v.size());
  engine.fwd(out, v);
  return out;
}

// Inverse discrete Fourier transform (scaled by 1/n, so inv(fwd(v)) == v).
inline Eigen::VectorXcd fft_inverse(const Eigen::VectorXcd& v) {
  static thread_local Eigen::FFT<double> engine;
  Eigen::VectorXcd out(v.size());
  engine.inv(out, v);
  return out;
}

// Signed wavenumbers of an n-point periodic grid of length L, in FFT bin
// order: k_j = 2*pi*f_j/L with f_j = j for j <= (n-1)/2 and f_j = j - n above
// (the upper half of the spectrum carries the negative modes).
inline Eigen::VectorXd fft_wavenumbers(int n, double L) {
  Eigen::VectorXd k(n);
  const double base = 2.0 * std::numbers::pi / L;
  for (int j = 0; j < n; ++j) {
    const int f = (j <= (n - 1) / 2) ? j : j - n;
    k(j) = base * f;
  }
  return k;
}

// Exact translation of the trigonometric interpolant of a periodic state:
// multiplies each Fourier mode by exp(-i k t), which shifts the sample set
// rigidly by t (circular shift when t is a whole number of grid cells).
inline state_vector fourier_translate(const state_vector& s, double t) {
  if (!s.grid.periodic)
    throw config_error("fourier_translate: needs a periodic grid");
  const Eigen::VectorXd k = fft_wavenumbers(s.grid.n_points, s.grid.length());
  Eigen::VectorXcd hat = fft_forward(s.amp);
  for (int j = 0; j < hat.size(); ++j)
    hat(j) *= std::polar(1.0, -k(j) * t);
  return state_vector{s.grid, fft_inverse(hat)};
}

}  // namespace zeno
