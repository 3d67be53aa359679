#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctqw/dynamics.hpp"
#include "ctqw/eigensystem.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/spectra.hpp"

namespace ctqw {

enum class IPRKind { Eigenstate, Dynamical };

struct IPRRecord {
  IPRKind kind = IPRKind::Eigenstate;
  std::string subject;
  double value = 0.0;
  double effective_support = 0.0;  // 1/value
};

inline IPRRecord make_ipr_record(IPRKind kind, std::string subject, double value, int N) {
  if (value < 1.0 / N - 1e-12 || value > 1.0 + 1e-12)
    throw std::domain_error("IPR value " + std::to_string(value) + " outside [1/N, 1]");
  return {kind, std::move(subject), value, 1.0 / value};
}

// Sum of fourth powers of the amplitudes of a normalized vector.
inline IPRRecord eigenstate_ipr(const Eigen::VectorXd& v, std::string subject = "") {
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("eigenstate_ipr: vector not normalized");
  const double value = v.array().pow(4).sum();
  return make_ipr_record(IPRKind::Eigenstate, std::move(subject), value,
                         static_cast<int>(v.size()));
}

// Sum of squares of the limiting-distribution entries for the given start.
inline IPRRecord dynamical_ipr(const EigenSystem& es, const Eigen::VectorXd& start,
                               std::string subject = "") {
  const auto lim = limiting_distribution(es, start);
  return make_ipr_record(IPRKind::Dynamical, std::move(subject),
                         lim.probabilities.squaredNorm(), es.N);
}

inline IPRRecord dynamical_ipr(const EigenSystem& es, int start_vertex,
                               std::string subject = "") {
  if (subject.empty()) subject = "index:" + std::to_string(start_vertex);
  return dynamical_ipr(es, unit_vertex_state(es.N, start_vertex), std::move(subject));
}

struct SpectralOverlap {
  Eigen::VectorXd coefficients;       // c_mu per basis column, spaces in order
  std::vector<double> space_weights;  // |Pi_k start|^2 per eigenspace
  std::vector<std::pair<std::string, double>> family_weights;  // per mode family
};

inline SpectralOverlap spectral_overlap(const EigenSystem& es, const Eigen::VectorXd& start) {
  detail::require_unit(start);
  SpectralOverlap o;
  o.coefficients.resize(es.total_multiplicity());
  int offset = 0;
  for (const auto& sp : es.spaces) {
    Eigen::VectorXd c = sp.basis.transpose() * start;
    o.coefficients.segment(offset, sp.multiplicity) = c;
    o.space_weights.push_back(c.squaredNorm());
    for (const auto& f : sp.families)
      o.family_weights.emplace_back(f.label,
                                    c.segment(f.col_begin, f.col_end - f.col_begin).squaredNorm());
    offset += sp.multiplicity;
  }
  return o;
}

inline double family_weight(const SpectralOverlap& o, const std::string& label) {
  double w = 0.0;
  for (const auto& [l, v] : o.family_weights)
    if (l == label) w += v;
  return w;
}

// sum_mu |c_mu|^4 IPR_mu over the labelled basis; never exceeds the
// dynamical IPR (degenerate cross terms only add).
inline double observation1_lower_bound(const EigenSystem& es, const Eigen::VectorXd& start) {
  detail::require_unit(start);
  double bound = 0.0;
  for (const auto& sp : es.spaces)
    for (int m = 0; m < sp.multiplicity; ++m) {
      const double c = sp.basis.col(m).dot(start);
      bound += c * c * c * c * sp.basis.col(m).array().pow(4).sum();
    }
  return bound;
}

// Decomposition of pibar and the dynamical IPR into single-mode terms (X),
// degenerate-pair cross terms (Y), and their quartet products. term1/2/3 are
// sum_i X_i^2, 2 sum_i X_i Y_i, sum_i Y_i^2; X+Y reconstructs pibar exactly.
struct XYZDiagnostic {
  Eigen::VectorXd x;  // per target vertex
  Eigen::VectorXd y;
  double term1 = 0.0;
  double term2 = 0.0;
  double term3 = 0.0;
  double quartet_sum = 0.0;  // literal pairwise quartet total, = term3/2
  double reconstruction = 0.0;  // sum_i (X_i + Y_i)^2
};

inline XYZDiagnostic xyz_decomposition(const EigenSystem& es, int start_vertex) {
  const int j = start_vertex;
  if (j < 0 || j >= es.N) throw std::invalid_argument("vertex index out of range");
  XYZDiagnostic d;
  d.x = Eigen::VectorXd::Zero(es.N);
  d.y = Eigen::VectorXd::Zero(es.N);
  for (const auto& sp : es.spaces) {
    const Eigen::VectorXd w = sp.basis.row(j).transpose();
    // products phi_mu(i) * phi_mu(j): pair sums collapse to (row sum)^2 - sum of squares
    const Eigen::MatrixXd prod = (sp.basis.array().rowwise() * w.transpose().array()).matrix();
    const Eigen::VectorXd s = prod.rowwise().sum();
    const Eigen::VectorXd q = prod.array().square().rowwise().sum().matrix();
    d.x += q;
    d.y += (s.array().square() - q.array()).matrix();
  }
  d.term1 = d.x.array().square().sum();
  d.term2 = 2.0 * (d.x.array() * d.y.array()).sum();
  d.term3 = d.y.array().square().sum();
  d.quartet_sum = 0.5 * d.term3;
  d.reconstruction = (d.x + d.y).array().square().sum();
  return d;
}

// Partial sum of sum_k 1/(k^2 (k+1)^2), ascending term size.
inline double l_series_partial(long kmax) {
  double s = 0.0;
  for (long k = kmax; k >= 1; --k) {
    const double kk = double(k) * (k + 1.0);
    s += 1.0 / (kk * kk);
  }
  return s;
}

struct ClassIPRRow {
  ClassTag tag;
  int representative = -1;
  IPRRecord record;
  double symmetry_deviation = 0.0;  // |IPR(rep0) - IPR(rep1)|, 0 for singleton classes
};

// Dynamical IPR per vertex-class representative; a second representative
// (when one exists) cross-checks the symmetry equivalence.
inline std::vector<ClassIPRRow> vertex_class_report(const GraphInstance& g,
                                                    const EigenSystem& es) {
  std::vector<ClassIPRRow> rows;
  for (ClassTag tag : family_class_tags(g.family)) {
    ClassIPRRow row;
    row.tag = tag;
    row.representative = class_representative(g, tag, 0);
    row.record = dynamical_ipr(es, row.representative, class_tag_name(tag));
    const int rep1 = class_representative(g, tag, 1);
    if (rep1 >= 0) {
      const auto other = dynamical_ipr(es, rep1);
      row.symmetry_deviation = std::abs(row.record.value - other.value);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct OverlapIdentitySums {
  double bridge_sq_sum = 0.0;    // sum_j <u_j|b_p>^2, exactly 1 - 1/n
  double alpha_p = 0.0;          // sum_j <u_j|b_p>^4
  double internal_sq_sum = 0.0;  // sum_r <w^(r)|c_q>^2, exactly 1 - 1/(n-1)
  double beta_pq = 0.0;          // sum_r <w^(r)|c_q>^4
};

// Completeness sums of the sequential coefficient vectors against a bridge
// slot p (1..n) and an internal slot q (2..n) of the single-bridge star.
inline OverlapIdentitySums overlap_identity_sums(const EigenSystem& es, const GraphInstance& g,
                                                 int p, int q) {
  if (g.family != Family::StarSingle || es.family != Family::StarSingle)
    throw std::invalid_argument("overlap_identity_sums: single-bridge star only");
  const int n = g.n;
  if (p < 1 || p > n || q < 2 || q > n) throw std::invalid_argument("slot out of range");
  OverlapIdentitySums s;
  for (int j = 1; j <= n - 1; ++j) {
    const double c = seq_coefficient(j, p - 1);
    s.bridge_sq_sum += c * c;
    s.alpha_p += c * c * c * c;
  }
  for (int r = 1; r <= n - 2; ++r) {
    const double c = seq_coefficient(r, q - 2);
    s.internal_sq_sum += c * c;
    s.beta_pq += c * c * c * c;
  }
  return s;
}

namespace detail {

inline std::string clique_mode_label(Family f) {
  switch (f) {
    case Family::Barbell: return "BarbellDegenerate";
    case Family::StarFull: return "V1_W";
    case Family::StarSingle: return "V2_W";
  }
  return "";
}

}  // namespace detail

// Contribution of the start vertex's own-clique sequential (degenerate)
// modes to the limiting distribution: |<i| P_W |start>|^2 with P_W the
// projector onto that clique's sequential modes. For the fully connected
// star this equals (delta_ij - 1/n)^2 on the clique block.
inline Eigen::VectorXd clique_mode_transition(const EigenSystem& es, const GraphInstance& g,
                                              int start_vertex) {
  const int clique = g.classes.at(start_vertex).clique_index;
  if (clique < 0) throw std::invalid_argument("start vertex belongs to no clique");
  const std::string label = detail::clique_mode_label(g.family);

  Eigen::VectorXd amp = Eigen::VectorXd::Zero(es.N);
  for (const auto& sp : es.spaces)
    for (const auto& f : sp.families) {
      if (f.label != label) continue;
      for (int c = f.col_begin; c < f.col_end; ++c) {
        bool in_clique = true;
        for (int i = 0; i < es.N && in_clique; ++i)
          if (sp.basis(i, c) != 0.0 && g.classes[i].clique_index != clique) in_clique = false;
        if (!in_clique) continue;
        amp += sp.basis.col(c) * sp.basis(start_vertex, c);
      }
    }
  return amp.array().square().matrix();
}

// Return probability under a coarser grouping of the labelled mode families:
// sum over groups of (sum of in-group projector diagonals)^2. `groups` must
// partition the eigensystem's family labels.
inline double grouped_return_probability(const EigenSystem& es, int vertex,
                                         const std::vector<std::vector<std::string>>& groups) {
  std::vector<std::string> all;
  for (const auto& sp : es.spaces)
    for (const auto& f : sp.families) all.push_back(f.label);
  std::vector<std::string> flat;
  for (const auto& grp : groups) flat.insert(flat.end(), grp.begin(), grp.end());
  std::sort(all.begin(), all.end());
  std::sort(flat.begin(), flat.end());
  if (all != flat) throw std::invalid_argument("groups do not partition the mode families");

  double total = 0.0;
  for (const auto& grp : groups) {
    double w = 0.0;
    for (const auto& label : grp)
      for (const auto& sp : es.spaces)
        for (const auto& f : sp.families)
          if (f.label == label)
            w += sp.basis.row(vertex)
                     .segment(f.col_begin, f.col_end - f.col_begin)
                     .squaredNorm();
    total += w * w;
  }
  return total;
}

}  // namespace ctqw
