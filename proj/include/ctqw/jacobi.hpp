#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ctqw/eigensystem.hpp"

namespace ctqw {

inline constexpr int kJacobiMaxN = 600;        // oracle duty only; O(N^3) per sweep
inline constexpr int kJacobiDefaultSweeps = 100;

struct NumericSpectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, matching order
  int iterations = 0;            // completed sweeps
  double off_diagonal_norm = 0.0;
};

inline double offdiag_frobenius(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (int p = 0; p < a.rows(); ++p)
    for (int q = 0; q < a.cols(); ++q)
      if (p != q) s += a(p, q) * a(p, q);
  return std::sqrt(s);
}

// Cyclic-by-row Jacobi rotations. Deterministic: fixed (p,q) sweep order, no
// thresholding heuristics. Converges quadratically once off-diagonal mass is
// small; the sweep cap only trips on non-convergence bugs.
inline NumericSpectrum jacobi_eigendecompose(Eigen::MatrixXd a, double tol = 1e-12,
                                             int max_sweeps = kJacobiDefaultSweeps) {
  const int n = static_cast<int>(a.rows());
  if (n < 1) throw std::invalid_argument("empty matrix");
  if (a.cols() != n) throw std::invalid_argument("matrix not square");
  if (n > kJacobiMaxN)
    throw std::invalid_argument("matrix dimension " + std::to_string(n) +
                                " exceeds the numeric oracle cap " + std::to_string(kJacobiMaxN));
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("matrix not symmetric within 1e-12");
  a = 0.5 * (a + a.transpose()).eval();

  const double norm0 = a.norm();
  const double stop = tol * std::max(norm0, 1e-300);
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  int sweep = 0;
  double off = offdiag_frobenius(a);
  for (; sweep < max_sweeps && off > stop; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
    off = offdiag_frobenius(a);
  }
  if (off > stop)
    throw std::runtime_error("jacobi failed to converge in " + std::to_string(max_sweeps) +
                             " sweeps (off-diagonal residual " + std::to_string(off) + ")");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) < a(j, j); });

  NumericSpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]);
    Eigen::VectorXd col = v.col(order[k]);
    int imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    if (col(imax) < 0.0) col = -col;  // deterministic sign
    out.eigenvectors.col(k) = col;
  }
  out.iterations = sweep;
  out.off_diagonal_norm = off;
  return out;
}

// Merge contiguous eigenvalues within the grouping tolerance into eigenspaces.
inline EigenSystem group_degenerate(const NumericSpectrum& s, Family family, int n,
                                    double rel_tol = 1e-9) {
  const int N = static_cast<int>(s.eigenvalues.size());
  EigenSystem es;
  es.family = family;
  es.n = n;
  es.N = N;
  es.path = Path::Numeric;
  const double spread = s.eigenvalues(N - 1) - s.eigenvalues(0);
  const double tol = grouping_tol(spread, rel_tol);
  int begin = 0;
  while (begin < N) {
    int end = begin + 1;
    while (end < N && s.eigenvalues(end) - s.eigenvalues(end - 1) <= tol) ++end;
    EigenSpace sp;
    sp.multiplicity = end - begin;
    sp.eigenvalue = s.eigenvalues.segment(begin, sp.multiplicity).mean();
    sp.basis = s.eigenvectors.middleCols(begin, sp.multiplicity);
    sp.families = {{"numeric", 0, sp.multiplicity}};
    es.spaces.push_back(std::move(sp));
    begin = end;
  }
  return es;
}

}  // namespace ctqw
