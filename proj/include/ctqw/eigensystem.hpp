#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctqw/graph.hpp"

namespace ctqw {

enum class Path { Analytic, Numeric };

// Two eigenvalues belong to the same eigenspace when they differ by at most
// grouping_tol(spread). Analytic coincidences are exact; this absorbs rounding.
inline double grouping_tol(double spectral_spread, double rel = 1e-9) {
  return rel * std::max(1.0, spectral_spread);
}

// A contiguous set of basis columns sharing one mode label (e.g. all d_k
// vectors, or the single s_+ vector). Half-open column range.
struct ModeFamily {
  std::string label;
  int col_begin = 0;
  int col_end = 0;
};

struct EigenSpace {
  double eigenvalue = 0.0;
  int multiplicity = 0;
  Eigen::MatrixXd basis;  // N x multiplicity, orthonormal columns
  std::vector<ModeFamily> families;

  std::string label() const {
    std::string s;
    for (const auto& f : families) {
      if (!s.empty()) s += "+";
      s += f.label;
    }
    return s;
  }

  Eigen::MatrixXd projector() const { return basis * basis.transpose(); }

  // <i|Pi|j> without forming the N x N projector.
  double projector_entry(int i, int j) const {
    return basis.row(i).dot(basis.row(j));
  }
};

// Full spectral decomposition with distinct (merged) eigenvalues, ascending.
struct EigenSystem {
  Family family = Family::Barbell;
  int n = 0;
  int N = 0;
  Path path = Path::Analytic;
  std::vector<EigenSpace> spaces;

  int total_multiplicity() const {
    int m = 0;
    for (const auto& s : spaces) m += s.multiplicity;
    return m;
  }

  double spectral_spread() const {
    if (spaces.empty()) return 0.0;
    return spaces.back().eigenvalue - spaces.front().eigenvalue;
  }

  // Pi_k |v> summed into columns of an N x K matrix.
  Eigen::MatrixXd project_onto_spaces(const Eigen::VectorXd& v) const {
    Eigen::MatrixXd out(N, spaces.size());
    for (size_t k = 0; k < spaces.size(); ++k)
      out.col(k) = spaces[k].basis * (spaces[k].basis.transpose() * v);
    return out;
  }

  const EigenSpace* space_with_family(const std::string& label) const {
    for (const auto& s : spaces)
      for (const auto& f : s.families)
        if (f.label == label) return &s;
    return nullptr;
  }
};

// Sort spaces ascending and merge any whose eigenvalues coincide within the
// grouping tolerance; labels of merged spaces are concatenated.
inline void merge_coincident_spaces(EigenSystem& es, double rel_tol = 1e-9) {
  std::sort(es.spaces.begin(), es.spaces.end(),
            [](const EigenSpace& a, const EigenSpace& b) { return a.eigenvalue < b.eigenvalue; });
  if (es.spaces.size() < 2) return;
  const double tol = grouping_tol(es.spectral_spread(), rel_tol);
  std::vector<EigenSpace> merged;
  for (auto& s : es.spaces) {
    if (!merged.empty() && std::abs(s.eigenvalue - merged.back().eigenvalue) <= tol) {
      EigenSpace& m = merged.back();
      Eigen::MatrixXd b(es.N, m.multiplicity + s.multiplicity);
      b.leftCols(m.multiplicity) = m.basis;
      b.rightCols(s.multiplicity) = s.basis;
      for (auto f : s.families) {
        f.col_begin += m.multiplicity;
        f.col_end += m.multiplicity;
        m.families.push_back(f);
      }
      m.basis = std::move(b);
      m.multiplicity += s.multiplicity;
    } else {
      merged.push_back(std::move(s));
    }
  }
  es.spaces = std::move(merged);
}

struct SpectrumComparison {
  bool space_counts_match = false;
  bool multiplicities_match = false;
  double max_eigenvalue_diff = 0.0;
  double max_projector_frobenius = 0.0;

  bool within(double eig_tol, double proj_tol) const {
    return space_counts_match && multiplicities_match &&
           max_eigenvalue_diff <= eig_tol && max_projector_frobenius <= proj_tol;
  }
};

// Basis-independent comparison of two decompositions of the same operator.
inline SpectrumComparison compare_spectra(const EigenSystem& a, const EigenSystem& b) {
  SpectrumComparison c;
  c.space_counts_match = a.spaces.size() == b.spaces.size();
  if (!c.space_counts_match) return c;
  c.multiplicities_match = true;
  for (size_t k = 0; k < a.spaces.size(); ++k) {
    const auto& sa = a.spaces[k];
    const auto& sb = b.spaces[k];
    if (sa.multiplicity != sb.multiplicity) c.multiplicities_match = false;
    c.max_eigenvalue_diff =
        std::max(c.max_eigenvalue_diff, std::abs(sa.eigenvalue - sb.eigenvalue));
    if (sa.multiplicity == sb.multiplicity) {
      double d = (sa.projector() - sb.projector()).norm();
      c.max_projector_frobenius = std::max(c.max_projector_frobenius, d);
    }
  }
  return c;
}

// Frobenius distance of sum-of-projectors from the identity.
inline double completeness_residual(const EigenSystem& es) {
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(es.N, es.N);
  for (const auto& s : es.spaces) sum += s.projector();
  return (sum - Eigen::MatrixXd::Identity(es.N, es.N)).norm();
}

inline void require_complete(const EigenSystem& es, double tol = 1e-9) {
  if (es.total_multiplicity() != es.N)
    throw std::invalid_argument("eigensystem incomplete: multiplicities sum to " +
                                std::to_string(es.total_multiplicity()) + " of " +
                                std::to_string(es.N));
  double r = completeness_residual(es);
  if (r > tol)
    throw std::invalid_argument("eigensystem projectors do not resolve the identity "
                                "(residual " + std::to_string(r) + ")");
}

}  // namespace ctqw
