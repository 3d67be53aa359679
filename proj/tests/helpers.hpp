#pragma once

// Test-side oracles, intentionally independent of the library's spectral route.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace testutil {

// exp(-iHt)|v> by scaling-and-squaring with a truncated Taylor series.
// Never touches an eigendecomposition, so it cross-checks the spectral
// propagator instead of restating it.
inline Eigen::VectorXcd expm_apply(const Eigen::MatrixXd& h, const Eigen::VectorXcd& v,
                                   double t) {
  using Mat = Eigen::MatrixXcd;
  const std::complex<double> minus_i(0.0, -1.0);
  Mat a = minus_i * t * h.cast<std::complex<double>>();

  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // infinity norm
  while (norm > 0.125) {
    a *= 0.5;
    norm *= 0.5;
    ++squarings;
  }

  Mat u = Mat::Identity(h.rows(), h.cols());
  Mat term = u;
  for (int k = 1; k <= 12; ++k) {
    term = (term * a) / static_cast<double>(k);
    u += term;
  }
  for (int s = 0; s < squarings; ++s) u = u * u;
  return u * v;
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed = 0x5eedULL) {
  return std::mt19937_64(seed);
}

}  // namespace testutil
