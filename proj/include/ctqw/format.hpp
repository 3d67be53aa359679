#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ctqw/eigensystem.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/ipr.hpp"

namespace ctqw {

inline constexpr const char* kVersion = "1.0.0";

// Fixed rendering for every float we emit: 17 significant digits, lowercase
// scientific. Round-trips doubles exactly and keeps output byte-stable.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

struct Tolerances {
  double eigen_residual = 1e-10;
  double oracle_eigenvalue = 1e-9;
  double oracle_projector = 1e-8;
  double grouping = 1e-9;
  double stochasticity = 1e-12;
};

inline void write_provenance_csv(std::ostream& os, const std::string& family, int n,
                                 const std::string& method) {
  const Tolerances t;
  os << "# ctqw " << kVersion << "\n";
  os << "# family=" << family << " n=" << n << " method=" << method << "\n";
  os << "# tol eigen_residual=" << t.eigen_residual
     << " oracle_eigenvalue=" << t.oracle_eigenvalue
     << " oracle_projector=" << t.oracle_projector << " grouping=" << t.grouping
     << " stochasticity=" << t.stochasticity << "\n";
}

inline nlohmann::json provenance_json(const std::string& family, int n,
                                      const std::string& method) {
  const Tolerances t;
  return {{"version", kVersion},
          {"family", family},
          {"n", n},
          {"method", method},
          {"tolerances",
           {{"eigen_residual", t.eigen_residual},
            {"oracle_eigenvalue", t.oracle_eigenvalue},
            {"oracle_projector", t.oracle_projector},
            {"grouping", t.grouping},
            {"stochasticity", t.stochasticity}}}};
}

inline nlohmann::json graph_json(const GraphInstance& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [i, j] : edge_list(g)) edges.push_back({i, j});
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : g.classes) {
    nlohmann::json row = {{"tag", class_tag_name(c.tag)}};
    if (c.clique_index >= 0) row["clique_index"] = c.clique_index;
    if (c.within_clique_index >= 0) row["within_clique_index"] = c.within_clique_index;
    classes.push_back(row);
  }
  return {{"family", family_name(g.family)},
          {"n", g.n},
          {"edges", edges},
          {"degrees", g.degrees},
          {"classes", classes}};
}

inline nlohmann::json eigensystem_json(const EigenSystem& es, bool full_vectors = false) {
  nlohmann::json spaces = nlohmann::json::array();
  for (const auto& s : es.spaces) {
    nlohmann::json row = {{"eigenvalue", s.eigenvalue},
                          {"multiplicity", s.multiplicity},
                          {"label", s.label()}};
    if (full_vectors) {
      nlohmann::json basis = nlohmann::json::array();
      for (int i = 0; i < s.basis.rows(); ++i)
        for (int c = 0; c < s.basis.cols(); ++c) basis.push_back(s.basis(i, c));
      row["basis_row_major"] = basis;
    }
    spaces.push_back(row);
  }
  return spaces;
}

inline const char* ipr_kind_name(IPRKind k) {
  return k == IPRKind::Eigenstate ? "eigenstate" : "dynamical";
}

struct IPRReportRow {
  IPRRecord record;
  std::string reference_formula;  // empty when no catalogued closed form applies
  double residual = 0.0;          // |value - reference|, 0 when no reference
  bool has_reference = false;
};

inline nlohmann::json ipr_report_json(const std::string& family, int n,
                                      const std::vector<IPRReportRow>& rows) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"kind", ipr_kind_name(r.record.kind)},
                          {"subject", r.record.subject},
                          {"value", r.record.value},
                          {"effective_support", r.record.effective_support}};
    if (r.has_reference) {
      row["reference_formula"] = r.reference_formula;
      row["residual"] = r.residual;
    } else {
      row["reference_formula"] = nullptr;
      row["residual"] = nullptr;
    }
    records.push_back(row);
  }
  return {{"family", family}, {"n", n}, {"records", records}};
}

}  // namespace ctqw
