#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "ctqw/eigensystem.hpp"

namespace ctqw {

struct WalkState {
  Eigen::VectorXcd amplitudes;
  double time = 0.0;
};

struct LimitingDistribution {
  std::string start;            // "index:<i>" or "state" for arbitrary vectors
  Eigen::VectorXd probabilities;  // time-averaged occupation per vertex
};

inline Eigen::VectorXd unit_vertex_state(int N, int i) {
  if (i < 0 || i >= N) throw std::invalid_argument("vertex index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
  v(i) = 1.0;
  return v;
}

namespace detail {

inline void require_unit(const Eigen::VectorXd& v, double tol = 1e-10) {
  if (std::abs(v.norm() - 1.0) > tol)
    throw std::invalid_argument("start state is not normalized");
}

// Eigenvalues of a merged system are pairwise distinct by construction; the
// time average below silently drops cross terms, so guard against unmerged
// input where that would be wrong.
inline void require_merged(const EigenSystem& es) {
  const double tol = grouping_tol(es.spectral_spread());
  for (size_t k = 1; k < es.spaces.size(); ++k)
    if (es.spaces[k].eigenvalue - es.spaces[k - 1].eigenvalue <= tol)
      throw std::invalid_argument("eigensystem has unmerged degenerate eigenvalues");
}

}  // namespace detail

// psi(t) = sum_k exp(-i lambda_k t) Pi_k |start>.
inline WalkState evolve(const EigenSystem& es, const Eigen::VectorXd& start, double t) {
  detail::require_unit(start);
  require_complete(es);
  const Eigen::MatrixXd parts = es.project_onto_spaces(start);
  WalkState w;
  w.time = t;
  w.amplitudes = Eigen::VectorXcd::Zero(es.N);
  for (size_t k = 0; k < es.spaces.size(); ++k) {
    const std::complex<double> phase = std::polar(1.0, -es.spaces[k].eigenvalue * t);
    w.amplitudes += phase * parts.col(k).cast<std::complex<double>>();
  }
  return w;
}

inline Eigen::VectorXd transition_probabilities(const EigenSystem& es,
                                                const Eigen::VectorXd& start, double t) {
  return evolve(es, start, t).amplitudes.cwiseAbs2();
}

// Long-time Cesaro average: pibar_i = sum_k <i|Pi_k|start>^2. Requires merged
// eigenvalues so that each degenerate space contributes through its projector.
inline LimitingDistribution limiting_distribution(const EigenSystem& es,
                                                  const Eigen::VectorXd& start) {
  detail::require_unit(start);
  require_complete(es);
  detail::require_merged(es);
  LimitingDistribution out;
  out.start = "state";
  out.probabilities = es.project_onto_spaces(start).array().square().rowwise().sum().matrix();
  return out;
}

inline LimitingDistribution limiting_distribution(const EigenSystem& es, int start_vertex) {
  auto out = limiting_distribution(es, unit_vertex_state(es.N, start_vertex));
  out.start = "index:" + std::to_string(start_vertex);
  return out;
}

// Trapezoidal average of transition probabilities over [0, T].
inline Eigen::VectorXd finite_time_average(const EigenSystem& es, const Eigen::VectorXd& start,
                                           double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0) || dt > T / 10.0)
    throw std::invalid_argument("need T > 0 and 0 < dt <= T/10");
  detail::require_unit(start);
  require_complete(es);

  const Eigen::MatrixXcd parts =
      es.project_onto_spaces(start).cast<std::complex<double>>();
  const int K = static_cast<int>(es.spaces.size());
  const int steps = static_cast<int>(std::llround(T / dt));

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(es.N);
  Eigen::VectorXcd amps(es.N);
  for (int m = 0; m <= steps; ++m) {
    const double t = m * dt;
    amps.setZero();
    for (int k = 0; k < K; ++k)
      amps += std::polar(1.0, -es.spaces[k].eigenvalue * t) * parts.col(k);
    const double w = (m == 0 || m == steps) ? 0.5 : 1.0;
    acc += w * amps.cwiseAbs2();
  }
  return acc / double(steps);
}

}  // namespace ctqw
