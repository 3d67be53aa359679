#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctqw/asymptotics.hpp"
#include "ctqw/dynamics.hpp"
#include "ctqw/format.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/ipr.hpp"
#include "ctqw/jacobi.hpp"
#include "ctqw/parallel.hpp"
#include "ctqw/spectra.hpp"
#include "ctqw/verify.hpp"

namespace {

using nlohmann::json;
using namespace ctqw;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitIo = 3;
constexpr int kExitUsage = 64;

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw std::ios_base::failure("cannot open output file '" + path + "'");
    os = &file;
  }
};

int resolve_start(const GraphInstance& g, const std::string& sel) {
  if (sel.rfind("class:", 0) == 0) {
    const ClassTag tag = parse_class_tag(sel.substr(6));
    const int idx = class_representative(g, tag, 0);
    if (idx < 0)
      throw std::invalid_argument("class " + sel.substr(6) + " not present in family " +
                                  family_name(g.family));
    return idx;
  }
  if (sel.rfind("index:", 0) == 0) {
    const int idx = std::stoi(sel.substr(6));
    if (idx < 0 || idx >= g.vertex_count) throw std::invalid_argument("vertex index out of range");
    return idx;
  }
  throw std::invalid_argument("start selector must be class:<name> or index:<i>");
}

EigenSystem spectrum_for(const GraphInstance& g, const std::string& method) {
  if (method == "analytic") return analytic_spectrum(g);
  if (method == "numeric")
    return group_degenerate(jacobi_eigendecompose(normalized_adjacency(g).matrix), g.family, g.n);
  throw std::invalid_argument("method must be analytic or numeric here");
}

// Catalog model matching a dynamical-IPR start class, if any.
const AsymptoticModel* class_model(Family f, ClassTag tag) {
  std::string id;
  if (f == Family::Barbell && tag == ClassTag::BridgeA) id = "barbell_bridge_dyn";
  if (f == Family::Barbell && tag == ClassTag::BridgeB) id = "barbell_bridge_dyn";
  if (f == Family::Barbell && (tag == ClassTag::CliqueA || tag == ClassTag::CliqueB))
    id = "barbell_clique_dyn";
  if (f == Family::StarFull && tag == ClassTag::Center) id = "v1_center_dyn";
  if (f == Family::StarFull && tag == ClassTag::StarCliqueVertex) id = "v1_clique_dyn";
  if (f == Family::StarSingle && tag == ClassTag::Center) id = "v2_center_dyn";
  if (f == Family::StarSingle && tag == ClassTag::StarBridge) id = "v2_bridge_dyn";
  if (f == Family::StarSingle && tag == ClassTag::StarInternal) id = "v2_internal_dyn";
  if (id.empty()) return nullptr;
  return &find_model(id);
}

void attach_reference(IPRReportRow& row, const AsymptoticModel* m, int n) {
  if (!m || !m->eval) return;
  row.has_reference = true;
  row.reference_formula = m->expression;
  row.residual = std::abs(row.record.value - m->eval(n));
}

int cmd_graph(const std::string& family, int n, const std::string& format,
              const std::string& out_path) {
  const auto g = build_graph(parse_family(family), n);
  Output out(out_path);
  if (format == "json") {
    json doc = graph_json(g);
    doc["provenance"] = provenance_json(family, n, "build");
    *out.os << doc.dump(2) << "\n";
  } else {
    write_provenance_csv(*out.os, family, n, "build");
    *out.os << "i,j\n";
    for (auto [i, j] : edge_list(g)) *out.os << i << "," << j << "\n";
  }
  return kExitOk;
}

int cmd_spectrum(const std::string& family, int n, const std::string& method, bool full_vectors,
                 const std::string& format, const std::string& out_path) {
  const auto g = build_graph(parse_family(family), n);
  if (full_vectors && format != "json")
    throw std::invalid_argument("--full-vectors requires --format json");

  std::optional<SpectrumComparison> cmp;
  EigenSystem es;
  if (method == "both") {
    es = analytic_spectrum(g);
    const auto numeric =
        group_degenerate(jacobi_eigendecompose(normalized_adjacency(g).matrix), g.family, g.n);
    cmp = compare_spectra(es, numeric);
  } else {
    es = spectrum_for(g, method);
  }

  Output out(out_path);
  const bool cmp_ok = !cmp || cmp->within(1e-9, 1e-8);
  if (format == "json") {
    json doc = {{"provenance", provenance_json(family, n, method)},
                {"spaces", eigensystem_json(es, full_vectors)}};
    if (cmp)
      doc["comparison"] = {{"max_eigenvalue_diff", cmp->max_eigenvalue_diff},
                           {"max_projector_frobenius", cmp->max_projector_frobenius},
                           {"structure_match", cmp->space_counts_match && cmp->multiplicities_match},
                           {"within_tolerance", cmp_ok}};
    *out.os << doc.dump(2) << "\n";
  } else {
    write_provenance_csv(*out.os, family, n, method);
    *out.os << "eigenvalue,multiplicity,label\n";
    for (const auto& s : es.spaces)
      *out.os << fmt17(s.eigenvalue) << "," << s.multiplicity << "," << s.label() << "\n";
    if (cmp)
      *out.os << "# comparison max_eigenvalue_diff=" << fmt17(cmp->max_eigenvalue_diff)
              << " max_projector_frobenius=" << fmt17(cmp->max_projector_frobenius)
              << " result=" << (cmp_ok ? "ok" : "fail") << "\n";
  }
  return cmp_ok ? kExitOk : kExitVerification;
}

std::vector<IPRReportRow> eigenstate_rows(const GraphInstance& g, const EigenSystem& es) {
  std::vector<IPRReportRow> rows;
  for (const auto& sp : es.spaces)
    for (const auto& f : sp.families) {
      // block structure of the sequential families, for per-mode references
      int modes_per_block = 0;
      if (f.label == "BarbellDegenerate") modes_per_block = g.n - 2;
      if (f.label == "V1_W") modes_per_block = g.n - 1;
      if (f.label == "V2_W") modes_per_block = g.n - 2;
      for (int c = f.col_begin; c < f.col_end; ++c) {
        IPRReportRow row;
        const int idx = c - f.col_begin;
        row.record = eigenstate_ipr(sp.basis.col(c), f.label + "[" + std::to_string(idx) + "]");
        if (modes_per_block > 0) {
          const int k = idx % modes_per_block + 1;
          row.has_reference = true;
          row.reference_formula = "(1+k^3)/(k(k+1)^2), k=" + std::to_string(k);
          row.residual = std::abs(row.record.value - closed_form_mode_ipr(k));
        } else if (f.label == "V1_Psi1") {
          attach_reference(row, &find_model("v1_psi1_eig"), g.n);
        } else if (f.label == "V1_Psi2") {
          attach_reference(row, &find_model("v1_psi2_eig"), g.n);
        }
        rows.push_back(std::move(row));
      }
    }
  return rows;
}

int cmd_ipr(const std::string& family, int n, const std::string& mode, const std::string& method,
            const std::string& start_sel, bool all_classes, bool all_modes,
            const std::string& format, const std::string& out_path) {
  const Family fam = parse_family(family);
  const auto g = build_graph(fam, n);
  const auto es = spectrum_for(g, method);

  std::vector<IPRReportRow> rows;
  if (mode == "eigenstate") {
    if (!start_sel.empty() || all_classes)
      throw std::invalid_argument("eigenstate mode takes --all-modes, not start selectors");
    (void)all_modes;  // eigenstate mode always reports every mode
    rows = eigenstate_rows(g, es);
  } else if (mode == "dynamical") {
    if (all_modes) throw std::invalid_argument("--all-modes applies to eigenstate mode");
    auto add_vertex = [&](int idx, const std::string& subject, ClassTag tag, bool with_ref) {
      IPRReportRow row;
      row.record = dynamical_ipr(es, idx, subject);
      if (with_ref) attach_reference(row, class_model(fam, tag), n);
      rows.push_back(std::move(row));
    };
    if (all_classes) {
      if (!start_sel.empty()) throw std::invalid_argument("--all-classes excludes --start");
      for (ClassTag tag : family_class_tags(fam))
        add_vertex(class_representative(g, tag, 0), class_tag_name(tag), tag, true);
    } else {
      if (start_sel.empty())
        throw std::invalid_argument("dynamical mode needs --start or --all-classes");
      const int idx = resolve_start(g, start_sel);
      add_vertex(idx, start_sel, g.classes[idx].tag, true);
    }
  } else {
    throw std::invalid_argument("mode must be eigenstate or dynamical");
  }

  Output out(out_path);
  if (format == "json") {
    json doc = ipr_report_json(family, n, rows);
    doc["provenance"] = provenance_json(family, n, method);
    *out.os << doc.dump(2) << "\n";
  } else {
    write_provenance_csv(*out.os, family, n, method);
    *out.os << "kind,subject,value,effective_support,reference_formula,residual\n";
    for (const auto& r : rows) {
      *out.os << ipr_kind_name(r.record.kind) << "," << r.record.subject << ","
              << fmt17(r.record.value) << "," << fmt17(r.record.effective_support) << ",";
      if (r.has_reference)
        *out.os << "\"" << r.reference_formula << "\"," << fmt17(r.residual);
      else
        *out.os << ",";
      *out.os << "\n";
    }
  }
  return kExitOk;
}

int cmd_evolve(const std::string& family, int n, const std::string& start_sel, double t_max,
               double dt, const std::string& method, const std::string& format,
               const std::string& out_path) {
  if (!(t_max > 0.0) || !(dt > 0.0)) throw std::invalid_argument("need --t-max > 0 and --dt > 0");
  const auto g = build_graph(parse_family(family), n);
  const auto es = spectrum_for(g, method);
  const int idx = resolve_start(g, start_sel);
  const auto start = unit_vertex_state(es.N, idx);
  const int steps = static_cast<int>(t_max / dt);

  Output out(out_path);
  if (format == "json") {
    json times = json::array(), probs = json::array();
    for (int m = 0; m <= steps; ++m) {
      const double t = m * dt;
      times.push_back(t);
      const auto p = transition_probabilities(es, start, t);
      probs.push_back(std::vector<double>(p.data(), p.data() + p.size()));
    }
    json doc = {{"provenance", provenance_json(family, n, method)},
                {"start", start_sel},
                {"times", times},
                {"probabilities", probs}};
    *out.os << doc.dump(2) << "\n";
  } else {
    write_provenance_csv(*out.os, family, n, method);
    *out.os << "t";
    for (int i = 0; i < es.N; ++i) *out.os << ",p" << i;
    *out.os << "\n";
    for (int m = 0; m <= steps; ++m) {
      const double t = m * dt;
      const auto p = transition_probabilities(es, start, t);
      *out.os << fmt17(t);
      for (int i = 0; i < es.N; ++i) *out.os << "," << fmt17(p(i));
      *out.os << "\n";
    }
  }
  return kExitOk;
}

int cmd_limit(const std::string& family, int n, const std::string& start_sel, bool all_classes,
              const std::string& method, const std::string& format, const std::string& out_path) {
  const Family fam = parse_family(family);
  const auto g = build_graph(fam, n);
  const auto es = spectrum_for(g, method);

  std::vector<std::pair<std::string, int>> starts;
  if (all_classes) {
    for (ClassTag tag : family_class_tags(fam))
      starts.emplace_back(class_tag_name(tag), class_representative(g, tag, 0));
  } else {
    if (start_sel.empty()) throw std::invalid_argument("need --start or --all-classes");
    starts.emplace_back(start_sel, resolve_start(g, start_sel));
  }

  Output out(out_path);
  if (format == "json") {
    json rows = json::array();
    for (auto& [name, idx] : starts) {
      const auto lim = limiting_distribution(es, idx);
      rows.push_back({{"start", name},
                      {"index", idx},
                      {"probabilities",
                       std::vector<double>(lim.probabilities.data(),
                                           lim.probabilities.data() + lim.probabilities.size())}});
    }
    json doc = {{"provenance", provenance_json(family, n, method)}, {"limits", rows}};
    *out.os << doc.dump(2) << "\n";
  } else {
    write_provenance_csv(*out.os, family, n, method);
    *out.os << "start";
    for (int i = 0; i < es.N; ++i) *out.os << ",pibar" << i;
    *out.os << "\n";
    for (auto& [name, idx] : starts) {
      const auto lim = limiting_distribution(es, idx);
      *out.os << name;
      for (int i = 0; i < es.N; ++i) *out.os << "," << fmt17(lim.probabilities(i));
      *out.os << "\n";
    }
  }
  return kExitOk;
}

int cmd_sweep(const std::string& metric, const std::vector<int>& ns, int jobs,
              const std::string& format, const std::string& out_path) {
  const auto& model = find_model(metric);
  std::vector<int> grid = ns;
  std::sort(grid.begin(), grid.end());
  if (grid.empty()) throw std::invalid_argument("--n-list must not be empty");
  for (int n : grid)
    if (n < family_min_n(model.family))
      throw std::invalid_argument("n = " + std::to_string(n) + " below family minimum");

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> computed(grid.size());
  parallel_for(static_cast<int>(grid.size()), resolve_jobs(jobs),
               [&](int i) { computed[i] = compute_model_value(metric, grid[i]); });
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool all_ok = true;
  std::vector<std::pair<long, double>> points;
  for (size_t i = 0; i < grid.size(); ++i) points.emplace_back(grid[i], computed[i]);

  struct Row {
    int n;
    double computed;
    bool has_pred = false;
    double predicted = 0.0;
    double residual = 0.0;
    bool pass = true;
  };
  std::vector<Row> rows;
  for (size_t i = 0; i < grid.size(); ++i) {
    Row row{grid[i], computed[i]};
    const auto pred = predict(metric, grid[i]);
    if (pred.has_value) {
      row.has_pred = true;
      row.predicted = pred.value;
      row.residual = std::abs(row.computed - row.predicted);
      if (model.kind == AsymptoticModel::Kind::Exact) row.pass = row.residual <= 1e-12;
    }
    all_ok = all_ok && row.pass;
    rows.push_back(row);
  }

  bool slope_checked = false, slope_ok = true;
  double slope = 0.0;
  if (model.kind != AsymptoticModel::Kind::Exact && grid.size() >= 3) {
    bool positive = true;
    for (double v : computed) positive = positive && v > 0.0;
    if (positive) {
      slope = scaling_fit(points).slope;
      slope_checked = true;
      if (model.kind == AsymptoticModel::Kind::OrderOnly) {
        slope_ok = std::abs(slope - model.order_exponent) <= 0.7;
        all_ok = all_ok && slope_ok;
      }
    }
  }

  Output out(out_path);
  if (format == "json") {
    json jrows = json::array();
    for (const auto& r : rows) {
      json row = {{"n", r.n}, {"computed", r.computed}, {"path", "analytic"}, {"pass", r.pass}};
      if (r.has_pred) {
        row["predicted"] = r.predicted;
        row["residual"] = r.residual;
      }
      jrows.push_back(row);
    }
    json doc = {{"provenance", provenance_json(family_name(model.family), grid.back(), "analytic")},
                {"metric", metric},
                {"subject", model.subject},
                {"expression", model.expression},
                {"rows", jrows}};
    if (slope_checked)
      doc["scaling"] = {{"slope", slope},
                        {"expected_exponent", model.order_exponent},
                        {"pass", slope_ok}};
    *out.os << doc.dump(2) << "\n";
  } else {
    write_provenance_csv(*out.os, family_name(model.family), grid.back(), "analytic");
    *out.os << "# metric=" << metric << " subject=\"" << model.subject << "\" expression=\""
            << model.expression << "\"\n";
    *out.os << "n,computed,path,predicted,residual,pass\n";
    for (const auto& r : rows) {
      *out.os << r.n << "," << fmt17(r.computed) << ",analytic,";
      if (r.has_pred)
        *out.os << fmt17(r.predicted) << "," << fmt17(r.residual);
      else
        *out.os << ",";
      *out.os << "," << (r.pass ? "true" : "false") << "\n";
    }
    if (slope_checked)
      *out.os << "# scaling slope=" << fmt17(slope) << " expected_exponent="
              << fmt17(model.order_exponent) << " pass=" << (slope_ok ? "true" : "false")
              << "\n";
  }
  std::cerr << "sweep elapsed_s=" << elapsed << "\n";
  return all_ok ? kExitOk : kExitVerification;
}

int cmd_verify(const VerifyOptions& opt, const std::string& format, const std::string& out_path) {
  const auto results = run_acceptance(opt);
  Output out(out_path);
  bool all_pass = true;
  if (format == "json") {
    json jres = json::array();
    for (const auto& r : results) {
      jres.push_back({{"id", r.id},
                      {"title", r.title},
                      {"pass", r.pass},
                      {"skipped", r.skipped},
                      {"detail", r.lines}});
      if (!r.pass) all_pass = false;
    }
    json doc = {{"provenance", provenance_json(opt.scope, opt.n_cap, "verify")},
                {"criteria", jres}};
    *out.os << doc.dump(2) << "\n";
  } else {
    all_pass = print_acceptance(*out.os, results);
  }
  return all_pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for quantum walks on barbell and star-of-cliques graphs"};
  app.require_subcommand(1);

  std::string family, format = "csv", out_path, method = "analytic", start_sel, mode;
  int n = 0;
  bool full_vectors = false, all_classes = false, all_modes = false;
  double t_max = 10.0, dt = 0.1;
  int jobs = default_jobs();
  std::vector<int> n_list;
  VerifyOptions vopt;

  auto add_common = [&](CLI::App* c, bool needs_n = true) {
    c->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--output", out_path, "write to file instead of stdout");
    if (needs_n) {
      c->add_option("--family", family, "barbell | star1 | star2")->required();
      c->add_option("--n", n, "clique size parameter")->required();
    }
  };

  auto* cg = app.add_subcommand("graph", "adjacency, degrees and vertex classes");
  add_common(cg);

  auto* cs = app.add_subcommand("spectrum", "eigenvalues, multiplicities, eigenspace labels");
  add_common(cs);
  cs->add_option("--method", method, "analytic | numeric | both")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}));
  cs->add_flag("--full-vectors", full_vectors, "include eigenvector bases (json only)");

  auto* ci = app.add_subcommand("ipr", "eigenstate or dynamical inverse participation ratios");
  add_common(ci);
  ci->add_option("--mode", mode, "eigenstate | dynamical")->required();
  ci->add_option("--method", method, "analytic | numeric")
      ->check(CLI::IsMember({"analytic", "numeric"}));
  ci->add_option("--start", start_sel, "class:<name> or index:<i>");
  ci->add_flag("--all-classes", all_classes, "one representative per vertex class");
  ci->add_flag("--all-modes", all_modes, "every eigenvector (eigenstate mode)");

  auto* ce = app.add_subcommand("evolve", "transition probabilities over a time grid");
  add_common(ce);
  ce->add_option("--method", method, "analytic | numeric")
      ->check(CLI::IsMember({"analytic", "numeric"}));
  ce->add_option("--start", start_sel, "class:<name> or index:<i>")->required();
  ce->add_option("--t-max", t_max, "largest time")->required();
  ce->add_option("--dt", dt, "time step")->required();

  auto* cl = app.add_subcommand("limit", "long-time averaged distribution per start");
  add_common(cl);
  cl->add_option("--method", method, "analytic | numeric")
      ->check(CLI::IsMember({"analytic", "numeric"}));
  cl->add_option("--start", start_sel, "class:<name> or index:<i>");
  cl->add_flag("--all-classes", all_classes, "one representative per vertex class");

  auto* cw = app.add_subcommand("sweep", "evaluate a catalogued metric over an n grid");
  cw->add_option("--metric", mode, "model id from the asymptotics catalog")->required();
  cw->add_option("--n-list", n_list, "sizes to evaluate")->required()->delimiter(',');
  cw->add_option("--jobs", jobs, "worker pool width (default CTQW_JOBS or 1)");
  cw->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cw->add_option("--output", out_path, "write to file instead of stdout");

  auto* cv = app.add_subcommand("verify", "run the acceptance criteria");
  cv->add_option("--scope", vopt.scope, "all | barbell | star1 | star2")
      ->check(CLI::IsMember({"all", "barbell", "star1", "star2"}));
  cv->add_option("--n-cap", vopt.n_cap, "clip verification grids at this n (0 = full)");
  cv->add_option("--oracle-eig-tol", vopt.oracle_eig_tol, "eigenvalue agreement tolerance");
  cv->add_option("--oracle-proj-tol", vopt.oracle_proj_tol, "projector agreement tolerance");
  cv->add_option("--jobs", vopt.jobs, "criteria run on this many workers");
  cv->add_option("--format", format, "csv (plain table) or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cv->add_option("--output", out_path, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(cg)) return cmd_graph(family, n, format, out_path);
    if (app.got_subcommand(cs)) return cmd_spectrum(family, n, method, full_vectors, format, out_path);
    if (app.got_subcommand(ci))
      return cmd_ipr(family, n, mode, method, start_sel, all_classes, all_modes, format, out_path);
    if (app.got_subcommand(ce))
      return cmd_evolve(family, n, start_sel, t_max, dt, method, format, out_path);
    if (app.got_subcommand(cl))
      return cmd_limit(family, n, start_sel, all_classes, method, format, out_path);
    if (app.got_subcommand(cw)) return cmd_sweep(mode, n_list, jobs, format, out_path);
    if (app.got_subcommand(cv)) return cmd_verify(vopt, format, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitUsage;
}
