#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctqw/eigensystem.hpp"
#include "ctqw/graph.hpp"

namespace ctqw {

// Roots of a*x^2 + b*x + c via the cancellation-free form
// q = -(b + sign(b)*sqrt(b^2-4ac))/2, roots q/a and c/q.
// Returns (smaller, larger).
inline std::pair<double, double> stable_quadratic(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) throw std::invalid_argument("complex roots");
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  double r1, r2;
  if (q == 0.0) {
    r1 = r2 = 0.0;
  } else {
    r1 = q / a;
    r2 = c / q;
  }
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

// Coefficient of the j-th sequential basis vector (j = 1..P-1) at 0-based
// position pos within its P-slot support: the first j slots carry
// 1/sqrt(j(j+1)), slot j carries -j/sqrt(j(j+1)), the rest vanish.
inline double seq_coefficient(int j, int pos) {
  const double a = 1.0 / std::sqrt(double(j) * (j + 1.0));
  if (pos < j) return a;
  if (pos == j) return -double(j) * a;
  return 0.0;
}

namespace detail {

inline EigenSpace make_space(double lambda, const std::string& label, Eigen::MatrixXd basis) {
  EigenSpace s;
  s.eigenvalue = lambda;
  s.multiplicity = static_cast<int>(basis.cols());
  s.families = {{label, 0, s.multiplicity}};
  s.basis = std::move(basis);
  return s;
}

// Barbell bridge-pair eigenvector: clique internals carry sqrt(n-1), bridges
// carry atilde*sqrt(n) with atilde = lambda*(n-1) - (n-2); the antisymmetric
// branch negates clique B.
inline Eigen::VectorXd barbell_pair_vector(int n, double lambda, bool antisymmetric) {
  const int N = 2 * n;
  const double atilde = lambda * (n - 1.0) - (n - 2.0);
  const double sgn = antisymmetric ? -1.0 : 1.0;
  Eigen::VectorXd v(N);
  const double internal = std::sqrt(n - 1.0);
  const double bridge = atilde * std::sqrt(double(n));
  for (int i = 0; i < n - 1; ++i) v(i) = internal;
  v(n - 1) = bridge;
  v(n) = sgn * bridge;
  for (int i = n + 1; i < N; ++i) v(i) = sgn * internal;
  return v / v.norm();
}

}  // namespace detail

// Spectrum of the barbell walk Hamiltonian: a degenerate space of
// multiplicity 2n-4 at -1/(n-1) spanned by per-clique sequential vectors,
// plus symmetric and antisymmetric bridge-pair modes from two quadratics.
// The symmetric pair simplifies exactly to {1, -1/(n(n-1))}.
inline EigenSystem barbell_spectrum(const GraphInstance& g) {
  if (g.family != Family::Barbell) throw std::invalid_argument("barbell_spectrum: family mismatch");
  const int n = g.n;
  const int N = 2 * n;

  EigenSystem es;
  es.family = g.family;
  es.n = n;
  es.N = N;
  es.path = Path::Analytic;

  Eigen::MatrixXd deg = Eigen::MatrixXd::Zero(N, 2 * n - 4);
  for (int k = 1; k <= n - 2; ++k)
    for (int pos = 0; pos <= k; ++pos) {
      deg(pos, k - 1) = seq_coefficient(k, pos);               // within A_1..A_{n-1}
      deg(n + 1 + pos, (n - 2) + (k - 1)) = seq_coefficient(k, pos);  // within B internals
    }
  es.spaces.push_back(detail::make_space(-1.0 / (n - 1.0), "BarbellDegenerate", std::move(deg)));

  es.spaces.push_back(detail::make_space(
      1.0, "BarbellSymPlus", detail::barbell_pair_vector(n, 1.0, false)));
  const double lam_sym_minus = -1.0 / (double(n) * (n - 1.0));
  es.spaces.push_back(detail::make_space(
      lam_sym_minus, "BarbellSymMinus", detail::barbell_pair_vector(n, lam_sym_minus, false)));

  const double a = double(n) * (n - 1.0);
  const double b = -(double(n) * n - 3.0 * n + 1.0);
  const double c = -(2.0 * n - 3.0);
  auto [lam_anti_minus, lam_anti_plus] = stable_quadratic(a, b, c);
  es.spaces.push_back(detail::make_space(
      lam_anti_plus, "BarbellAntiPlus", detail::barbell_pair_vector(n, lam_anti_plus, true)));
  es.spaces.push_back(detail::make_space(
      lam_anti_minus, "BarbellAntiMinus", detail::barbell_pair_vector(n, lam_anti_minus, true)));

  merge_coincident_spaces(es);
  return es;
}

// Spectrum of the fully connected star-of-cliques: eigenvalue 1 (Perron
// mode), (n-1)/n with multiplicity n-1 (inter-clique sequential modes), and
// the merged -1/n space of multiplicity 1 + n(n-1) combining the second
// hub mode with all within-clique sequential modes.
inline EigenSystem star_full_spectrum(const GraphInstance& g) {
  if (g.family != Family::StarFull) throw std::invalid_argument("star_full_spectrum: family mismatch");
  const int n = g.n;
  const int N = n * n + 1;

  EigenSystem es;
  es.family = g.family;
  es.n = n;
  es.N = N;
  es.path = Path::Analytic;

  Eigen::VectorXd psi1(N);
  psi1(0) = 1.0 / std::sqrt(1.0 + n);
  const double cv = 1.0 / std::sqrt(double(n) * (1.0 + n));
  for (int i = 1; i < N; ++i) psi1(i) = cv;
  es.spaces.push_back(detail::make_space(1.0, "V1_Psi1", psi1));

  Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(N, n - 1);
  const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
  for (int j = 1; j <= n - 1; ++j)
    for (int blk = 1; blk <= n; ++blk) {
      const double c = seq_coefficient(j, blk - 1) * inv_sqrt_n;
      if (c == 0.0) continue;
      for (int k = 1; k <= n; ++k) chi(star_vertex(n, blk, k), j - 1) = c;
    }
  es.spaces.push_back(detail::make_space((n - 1.0) / n, "V1_Chi", std::move(chi)));

  EigenSpace low;
  low.eigenvalue = -1.0 / n;
  low.multiplicity = 1 + n * (n - 1);
  low.basis = Eigen::MatrixXd::Zero(N, low.multiplicity);
  low.basis(0, 0) = std::sqrt(double(n) / (1.0 + n));
  const double cw = -1.0 / (double(n) * std::sqrt(1.0 + n));
  for (int i = 1; i < N; ++i) low.basis(i, 0) = cw;
  int col = 1;
  for (int j = 1; j <= n; ++j)
    for (int r = 1; r <= n - 1; ++r, ++col)
      for (int k = 1; k <= n; ++k)
        low.basis(star_vertex(n, j, k), col) = seq_coefficient(r, k - 1);
  low.families = {{"V1_Psi2", 0, 1}, {"V1_W", 1, low.multiplicity}};
  es.spaces.push_back(std::move(low));

  merge_coincident_spaces(es);
  return es;
}

// Spectrum of the single-bridge star-of-cliques: three hub-coupled modes
// (eigenvalue 1 plus two quadratic roots), two (n-1)-fold bridge/internal
// families from a second quadratic, and the n(n-2)-fold -1/(n-1) space of
// within-clique internal sequential modes.
inline EigenSystem star_single_spectrum(const GraphInstance& g) {
  if (g.family != Family::StarSingle)
    throw std::invalid_argument("star_single_spectrum: family mismatch");
  const int n = g.n;
  const int N = n * n + 1;

  EigenSystem es;
  es.family = g.family;
  es.n = n;
  es.N = N;
  es.path = Path::Analytic;

  const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
  const double inv_sqrt_n1 = 1.0 / std::sqrt(n - 1.0);

  // psi1: components 1 on the hub, sqrt(n) on the uniform bridge vector,
  // (n-1) on the uniform internal vector, normalized by D = 1 + n + (n-1)^2.
  {
    const double D = 1.0 + n + (n - 1.0) * (n - 1.0);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
    v(0) = 1.0 / std::sqrt(D);
    const double cb = 1.0 / std::sqrt(D);
    const double ci = std::sqrt((n - 1.0) / n) / std::sqrt(D);
    for (int j = 1; j <= n; ++j) {
      v(star_vertex(n, j, 1)) = cb;
      for (int k = 2; k <= n; ++k) v(star_vertex(n, j, k)) = ci;
    }
    es.spaces.push_back(detail::make_space(1.0, "V2_Psi1", v));
  }

  // psi2/psi3: the non-unit roots of the hub-block cubic, i.e. of
  // lambda^2 + lambda/(n-1) - (n-2)/(n(n-1)) = 0.
  {
    auto [lo, hi] = stable_quadratic(1.0, 1.0 / (n - 1.0), -(n - 2.0) / (double(n) * (n - 1.0)));
    int idx = 2;
    for (double lam : {hi, lo}) {
      const double t = lam * lam * n - 1.0;
      const double norm = std::sqrt(1.0 + lam * lam * n + t * t);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
      v(0) = 1.0 / norm;
      const double cb = lam / norm;
      const double ci = t / (std::sqrt(double(n) * (n - 1.0)) * norm);
      for (int j = 1; j <= n; ++j) {
        v(star_vertex(n, j, 1)) = cb;
        for (int k = 2; k <= n; ++k) v(star_vertex(n, j, k)) = ci;
      }
      es.spaces.push_back(detail::make_space(lam, "V2_Psi" + std::to_string(idx), v));
      ++idx;
    }
  }

  // phi4/phi5: sequential modes across cliques mixing bridge and internal
  // slots; roots of lambda^2 - ((n-2)/(n-1)) lambda - 1/n = 0.
  {
    auto [lo, hi] = stable_quadratic(1.0, -(n - 2.0) / (n - 1.0), -1.0 / n);
    struct Branch { double lam; const char* label; };
    for (Branch br : {Branch{hi, "V2_Phi4"}, Branch{lo, "V2_Phi5"}}) {
      const double denom = std::sqrt(1.0 + br.lam * br.lam * n);
      Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(N, n - 1);
      for (int j = 1; j <= n - 1; ++j)
        for (int p = 1; p <= n; ++p) {
          const double u = seq_coefficient(j, p - 1);
          if (u == 0.0) continue;
          basis(star_vertex(n, p, 1), j - 1) = u / denom;
          const double ci = br.lam * std::sqrt(double(n)) * u * inv_sqrt_n1 / denom;
          for (int k = 2; k <= n; ++k) basis(star_vertex(n, p, k), j - 1) = ci;
        }
      es.spaces.push_back(detail::make_space(br.lam, br.label, std::move(basis)));
    }
  }

  // w modes: sequential vectors on each clique's n-1 internal vertices.
  {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(N, n * (n - 2));
    int col = 0;
    for (int j = 1; j <= n; ++j)
      for (int r = 1; r <= n - 2; ++r, ++col)
        for (int k = 2; k <= n; ++k)
          basis(star_vertex(n, j, k), col) = seq_coefficient(r, k - 2);
    es.spaces.push_back(detail::make_space(-1.0 / (n - 1.0), "V2_W", std::move(basis)));
  }

  merge_coincident_spaces(es);
  return es;
}

inline EigenSystem analytic_spectrum(const GraphInstance& g) {
  switch (g.family) {
    case Family::Barbell: return barbell_spectrum(g);
    case Family::StarFull: return star_full_spectrum(g);
    case Family::StarSingle: return star_single_spectrum(g);
  }
  throw std::invalid_argument("unknown family");
}

// Leading-order eigenvalue expansions, reported as published reference
// values only; no convergence toward the exact spectrum is asserted (several
// are known not to match the exact roots' true expansions).
inline std::vector<std::pair<std::string, double>> asymptotic_eigenvalues(Family family, int n) {
  if (n < family_min_n(family)) throw std::invalid_argument("n below family minimum");
  const double nn = n;
  switch (family) {
    case Family::Barbell:
      return {{"lambda_plus_2", 2.0 / nn},
              {"lambda_minus_2", -2.0 / nn},
              {"lambda_minus_1", -1.0 / (nn * nn)}};
    case Family::StarSingle:
      return {{"lambda_2", 1.0 - 3.0 / (2.0 * nn)},
              {"lambda_3", -1.0 + 1.0 / (2.0 * nn)},
              {"lambda_4", 1.0 - 1.0 / (4.0 * nn * nn)},
              {"lambda_5", -1.0 / nn + 1.0 / (nn * nn)}};
    case Family::StarFull:
      return {};
  }
  return {};
}

}  // namespace ctqw
