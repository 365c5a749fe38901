#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "spherefit/spherefit.hpp"

namespace {

using namespace spherefit;

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

/// Degree rules tying the sample scale n to the interpolation and
/// reconstruction degrees: m = floor(n/4) + 1, r = m + floor(sqrt(2m)).
int rule_m(int n) { return n / 4 + 1; }
int rule_r(int m) { return m + int(std::floor(std::sqrt(2.0 * m))); }

struct DegreeConfig {
  int n = -1;  // sample scale; N = (n+1)^2 when nodes are generated from it
  int r = -1;  // reconstruction degree
  int m = -1;  // interpolation degree
};

/// Fill unset degrees from the rules and enforce r < n and m < r.
void resolve_degrees(DegreeConfig& d, bool need_r, bool need_m) {
  if (d.m < 0 && d.n >= 0) d.m = rule_m(d.n);
  if (d.r < 0 && d.m >= 0) d.r = rule_r(d.m);
  if (need_r && d.r < 0) {
    throw std::invalid_argument("no reconstruction degree: give -r or -n");
  }
  if (need_m && d.m < 0) {
    throw std::invalid_argument("no interpolation degree: give --m or -n");
  }
  if (d.n >= 0 && d.r >= 0 && d.r >= d.n) {
    throw std::invalid_argument("invalid configuration: need r < n (r = " +
                                std::to_string(d.r) + ", n = " + std::to_string(d.n) + ")");
  }
  if (d.m >= 0 && d.r >= 0 && d.m >= d.r) {
    throw std::invalid_argument("invalid configuration: need m < r (m = " +
                                std::to_string(d.m) + ", r = " + std::to_string(d.r) + ")");
  }
}

/// Sample values, one per node: plain text (one number per line, '#'
/// comments) or a JSON array of numbers.
Eigen::VectorXd load_values(const std::string& path) {
  if (format_from_path(path) == NodeFormat::Json) {
    const json j = read_json(path);
    if (!j.is_array()) throw ParseError("load_values: '" + path + "': expected a JSON array");
    return detail::vector_from_json(j, path);
  }
  std::ifstream in(path);
  if (!in) throw ParseError("load_values: cannot open '" + path + "'");
  std::vector<double> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    double v;
    if (!(is >> v)) {
      std::string word;
      if (std::istringstream(line) >> word) {
        throw ParseError("load_values: '" + path + "': line " + std::to_string(lineno) +
                         ": expected a number, got '" + word + "'");
      }
      continue;
    }
    std::string extra;
    if (is >> extra) {
      throw ParseError("load_values: '" + path + "': line " + std::to_string(lineno) +
                       ": expected exactly one value");
    }
    vals.push_back(v);
  }
  return Eigen::Map<const Eigen::VectorXd>(vals.data(), Eigen::Index(vals.size()));
}

/// Constraint rows from either a selection JSON or an explicit index list.
std::vector<int> resolve_subset(const std::string& subset_json,
                                const std::vector<int>& subset_indices, int num_nodes) {
  std::vector<int> rows = subset_indices;
  if (!subset_json.empty()) {
    if (!rows.empty()) {
      throw std::invalid_argument("give either --subset or --subset-indices, not both");
    }
    rows = selection_indices_from_json(read_json(subset_json));
  }
  for (int row : rows) {
    if (row < 0 || row >= num_nodes) {
      throw std::invalid_argument("subset index " + std::to_string(row) +
                                  " out of range for " + std::to_string(num_nodes) + " nodes");
    }
  }
  return rows;
}

/// Representatives and partners of a paired node file, in file order of the
/// first member of each pair.
struct PairedView {
  NodeSet file;            // with pairing metadata
  std::vector<int> rep;    // file row of the representative of pair k
  std::vector<int> partner;  // file row of its antipode
};

PairedView paired_view(const NodeSet& loaded) {
  PairedView view;
  view.file = loaded.has_pairing() ? loaded : detect_pairing(loaded);
  for (const auto& [j, jp] : view.file.pairing()) {
    view.rep.push_back(std::min(j, jp));
    view.partner.push_back(std::max(j, jp));
  }
  return view;
}

// ---------------------------------------------------------------------------
// gen-nodes
// ---------------------------------------------------------------------------

struct GenNodesOpts {
  int fibonacci = -1;
  int random = -1;
  std::string complete;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_gen_nodes(const GenNodesOpts& o) {
  const int modes = (o.fibonacci >= 0) + (o.random >= 0) + (!o.complete.empty());
  if (modes != 1) {
    throw std::invalid_argument("give exactly one of --fibonacci, --random, --complete");
  }
  if (o.fibonacci >= 0) {
    save_nodes(fibonacci_grid(o.fibonacci), o.output);
  } else if (o.random >= 0) {
    save_nodes(random_nodes(o.random, o.seed), o.output);
  } else {
    const NodeSet base = load_nodes(o.complete);
    const NodeSet done = antipodal_complete(base);  // validates the completion
    const int n = base.size();
    std::vector<SphPoint> interleaved;
    interleaved.reserve(size_t(2 * n));
    for (int i = 0; i < n; ++i) {
      interleaved.push_back(done[i]);
      interleaved.push_back(done[n + i]);
    }
    save_nodes(NodeSet(std::move(interleaved), done.label()), o.output);
  }
  std::cout << "wrote " << o.output << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// select
// ---------------------------------------------------------------------------

struct SelectOpts {
  std::string nodes;
  std::string mode = "antipodal";
  DegreeConfig deg;
  double threshold = default_rank_threshold;
  std::string json_out;
  std::string subset_xyz;
};

int cmd_select(const SelectOpts& o) {
  const NodeSet loaded = load_nodes(o.nodes);

  SelectionResult sel;
  std::vector<int> file_indices;
  if (o.mode == "antipodal") {
    DegreeConfig deg = o.deg;
    resolve_degrees(deg, /*need_r=*/true, /*need_m=*/false);
    PairedView view;
    try {
      view = paired_view(loaded);
    } catch (const NotAntipodal&) {
      throw NotAntipodal("select: antipodal mode needs an antipodally completed node file "
                         "(run gen-nodes --complete first)");
    }
    AntipodalSelectOptions opts;
    opts.rank_threshold = o.threshold;
    sel = antipodal_select(view.file.subset(view.rep), deg.r, opts);
    for (int b : sel.base_indices) {
      file_indices.push_back(view.rep[size_t(b)]);
      file_indices.push_back(view.partner[size_t(b)]);
    }
    if (!sel.m) {
      std::cerr << "warning: no admissible interpolation degree; subset is empty\n";
    }
  } else if (o.mode == "fekete") {
    DegreeConfig deg = o.deg;
    if (deg.m < 0 && deg.n >= 0) deg.m = rule_m(deg.n);
    if (deg.m < 0) throw std::invalid_argument("fekete mode needs --m or -n");
    const int M = (deg.m + 1) * (deg.m + 1);
    const VandermondeMatrix V(loaded, HarmonicBasis(deg.m));
    file_indices = approximate_fekete(V, M);
    sel.subset = loaded.subset(file_indices);
    sel.m = deg.m;
    sel.rank_certificate =
        rank_report(VandermondeMatrix(sel.subset, HarmonicBasis(deg.m)), o.threshold);
  } else {
    throw std::invalid_argument("unknown selection mode '" + o.mode +
                                "' (expected antipodal or fekete)");
  }

  if (!o.json_out.empty()) write_json(to_json(sel, file_indices), o.json_out);
  if (!o.subset_xyz.empty()) {
    save_nodes(loaded.subset(file_indices, "selected"), o.subset_xyz);
  }
  std::cout << "selected " << file_indices.size() << " nodes";
  if (sel.m) std::cout << " (m = " << *sel.m << ")";
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitOpts {
  std::string nodes;
  std::string data;
  std::string function;
  std::string subset_json;
  std::vector<int> subset_indices;
  DegreeConfig deg;
  std::string path = "auto";
  int design_strength = 0;
  double threshold = default_rank_threshold;
  bool no_strict = false;
  bool no_inertia = false;
  std::string output;
};

int cmd_fit(const FitOpts& o) {
  DegreeConfig deg = o.deg;
  resolve_degrees(deg, /*need_r=*/true, /*need_m=*/false);
  NodeSet X = load_nodes(o.nodes);

  if ((o.data.empty()) == (o.function.empty())) {
    throw std::invalid_argument("give exactly one of --data or --function");
  }
  const Eigen::VectorXd f =
      o.data.empty() ? test_function(o.function).sample(X) : load_values(o.data);

  SolveOptions options;
  options.path = solver_path_from_string(o.path);
  options.rank_threshold = o.threshold;
  options.compute_inertia = !o.no_inertia;

  const bool parity = options.path == SolverPath::Parity;
  if (parity && !X.has_pairing()) X = detect_pairing(X);

  if (o.design_strength > 0) {
    const DesignCertificate cert = verify_design(X, o.design_strength);
    if (!cert.certified()) {
      std::cerr << "design certificate FAILED: strength " << o.design_strength
                << " defect " << cert.max_defect << "\n";
      return 1;
    }
    if (o.design_strength >= 2 * deg.r) {
      options.design_alpha = design_alpha_for(X);
    } else {
      std::cerr << "warning: design strength " << o.design_strength << " < 2r = "
                << 2 * deg.r << "; the collapsed-Gram fast path stays off\n";
    }
  }

  FitProblem problem{assemble(X, HarmonicBasis(deg.r, parity)),
                     resolve_subset(o.subset_json, o.subset_indices, X.size()), f, options};
  const FitResult fit = solve(problem);

  if (!o.output.empty()) write_json(to_json(fit), o.output);
  std::cout << "path " << to_string(fit.path_taken) << ", residual " << fit.residual_norm
            << ", constraint defect " << fit.constraint_defect << ", orthogonality defect "
            << fit.orthogonality_defect << "\n";

  const bool certified = fit.constraints_certified() && fit.orthogonality_certified();
  if (!certified) {
    std::cerr << "certificate FAILED: constraint defect " << fit.constraint_defect
              << " (gate " << 1e-8 * (1.0 + fit.data_inf_norm) << "), orthogonality defect "
              << fit.orthogonality_defect << " (gate 1e-8)\n";
    if (!o.no_strict) return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateOpts {
  std::string fit;
  std::string points;
  std::string function;
  std::string output;
};

int cmd_evaluate(const EvaluateOpts& o) {
  const FitResult fit = fit_from_json(read_json(o.fit));
  const NodeSet Y = load_nodes(o.points);
  const Eigen::VectorXd vals = evaluate_fit(fit, Y);

  std::ofstream out(o.output);
  if (!out) throw std::runtime_error("evaluate: cannot open '" + o.output + "' for writing");
  const NodeFormat fmt = format_from_path(o.output);
  if (fmt == NodeFormat::Csv) {
    out << "x,y,z,value\n";
    for (int i = 0; i < Y.size(); ++i) {
      out << detail::format17(Y[i].x) << "," << detail::format17(Y[i].y) << ","
          << detail::format17(Y[i].z) << "," << detail::format17(vals[i]) << "\n";
    }
  } else if (fmt == NodeFormat::Json) {
    json j = json::array();
    for (int i = 0; i < vals.size(); ++i) j.push_back(vals[i]);
    out << j.dump(2) << "\n";
  } else {
    for (int i = 0; i < vals.size(); ++i) out << detail::format17(vals[i]) << "\n";
  }

  if (!o.function.empty()) {
    const TestFunction f = test_function(o.function);
    double e_inf = 0.0;
    for (int i = 0; i < Y.size(); ++i) e_inf = std::max(e_inf, std::abs(f(Y[i]) - vals[i]));
    std::cout << "E_inf " << detail::format17(e_inf) << " over " << Y.size() << " points\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// validate-degree
// ---------------------------------------------------------------------------

struct ValidateOpts {
  std::vector<std::string> nodes;
  std::vector<std::string> functions = {"f1", "f2", "f3", "f4"};
  std::vector<int> degrees;
  int grid = 0;
  std::string output;
};

int cmd_validate_degree(const ValidateOpts& o) {
  if (o.nodes.empty()) throw std::invalid_argument("validate-degree needs --nodes");
  if (o.degrees.empty()) throw std::invalid_argument("validate-degree needs --degrees");
  std::vector<NodeSet> families;
  for (const std::string& path : o.nodes) families.push_back(load_nodes(path));
  std::vector<TestFunction> functions;
  for (const std::string& id : o.functions) functions.push_back(test_function(id));

  const DegreeValidation val = validate_degree(functions, families, o.degrees, o.grid);

  json j;
  j["schema"] = schema_tag;
  j["r_star"] = val.r_star;
  j["degrees"] = val.degrees;
  j["grid_size"] = val.grid_size;
  json totals = json::array();
  for (double t : val.totals) {
    totals.push_back(std::isfinite(t) ? json(t) : json("inf"));
  }
  j["totals"] = std::move(totals);
  json cells = json::array();
  for (size_t i = 0; i < val.cells.size(); ++i) {
    for (const ValidationCell& cell : val.cells[i]) {
      json c;
      c["degree"] = val.degrees[i];
      c["function"] = cell.function_id;
      c["family"] = cell.family;
      c["E_inf"] = std::isfinite(cell.e_inf) ? json(cell.e_inf) : json("inf");
      c["failed"] = cell.failed;
      if (cell.failed) c["failure"] = cell.failure;
      cells.push_back(std::move(c));
    }
  }
  j["cells"] = std::move(cells);
  if (!o.output.empty()) write_json(j, o.output);

  if (val.r_star < 0) {
    std::cerr << "warning: every candidate degree failed\n";
  }
  std::cout << "r_star " << val.r_star << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportOpts {
  // Error sweep across sample scales.
  std::vector<int> n_values;
  std::vector<std::string> functions = {"f1", "f2", "f3", "f4"};
  int grid = 0;
  std::string csv_out;
  // Saddle-point spectrum comparison on a design.
  std::string spectrum_nodes;
  DegreeConfig deg;
  std::string subset_json;
  std::vector<int> subset_indices;
  std::string json_out;
};

int report_sweep(const ReportOpts& o) {
  std::vector<ErrorTableRow> rows;
  std::vector<int> n_values = o.n_values;
  std::sort(n_values.begin(), n_values.end());
  for (int n : n_values) {
    DegreeConfig deg;
    deg.n = n;
    resolve_degrees(deg, true, true);
    const int N = (n + 1) * (n + 1);
    const NodeSet X = fibonacci_grid(N);
    const std::vector<int> subset =
        approximate_fekete(VandermondeMatrix(X, HarmonicBasis(deg.m)),
                           (deg.m + 1) * (deg.m + 1));
    const int L = o.grid > 0 ? o.grid : 4 * N;
    for (const std::string& id : o.functions) {
      const TestFunction f = test_function(id);
      const FitProblem problem{assemble(X, HarmonicBasis(deg.r)), subset, f.sample(X),
                               SolveOptions{}};
      const double e = uniform_error(solve(problem), f, L).e_inf;
      rows.push_back({n, deg.r, deg.m, id, e});
    }
  }
  write_error_table_csv(rows, o.csv_out);

  for (const std::string& id : o.functions) {
    double prev = std::numeric_limits<double>::infinity();
    bool nonincreasing = true;
    for (const ErrorTableRow& row : rows) {
      if (row.function_id != id) continue;
      nonincreasing = nonincreasing && row.e_inf <= 2.0 * prev;  // factor-2 noise allowance
      prev = row.e_inf;
    }
    std::cout << "trend " << id << ": "
              << (nonincreasing ? "nonincreasing" : "NOT nonincreasing") << "\n";
  }
  std::cout << "wrote " << o.csv_out << "\n";
  return 0;
}

int report_spectrum(const ReportOpts& o) {
  DegreeConfig deg = o.deg;
  resolve_degrees(deg, /*need_r=*/true, /*need_m=*/false);
  const NodeSet X = load_nodes(o.spectrum_nodes);
  const DesignCertificate cert = verify_design(X, 2 * deg.r);
  if (!cert.certified()) {
    std::cerr << "warning: nodes are not a certified strength-" << 2 * deg.r
              << " design (defect " << cert.max_defect
              << "); the collapsed-Gram spectrum formulas do not apply\n";
  }
  const std::vector<int> rows = resolve_subset(o.subset_json, o.subset_indices, X.size());
  if (rows.empty()) throw std::invalid_argument("spectrum report needs a nonempty subset");

  const VandermondeMatrix V(X, HarmonicBasis(deg.r));
  Eigen::MatrixXd V_M(rows.size(), V.cols());
  for (size_t k = 0; k < rows.size(); ++k) V_M.row(Eigen::Index(k)) = V.matrix().row(rows[k]);
  const SpectrumReport rep = design_spectrum(design_alpha_for(X), V_M);

  if (!o.json_out.empty()) write_json(to_json(rep), o.json_out);
  std::cout << "kappa2 formula " << detail::format17(rep.kappa2_formula) << ", numeric "
            << detail::format17(rep.kappa2_numeric) << "\n";
  return 0;
}

int cmd_report(const ReportOpts& o) {
  const bool sweep = !o.csv_out.empty();
  const bool spectrum = !o.spectrum_nodes.empty();
  if (sweep == spectrum) {
    throw std::invalid_argument("give exactly one of --csv (error sweep) or "
                                "--spectrum-nodes (design spectrum)");
  }
  return sweep ? report_sweep(o) : report_spectrum(o);
}

// ---------------------------------------------------------------------------
// design-check
// ---------------------------------------------------------------------------

struct DesignCheckOpts {
  std::string nodes;
  int strength = 0;
  double tol = 1e-10;
  std::string output;
};

int cmd_design_check(const DesignCheckOpts& o) {
  const NodeSet X = load_nodes(o.nodes);
  const DesignCertificate cert = verify_design(X, o.strength);
  if (!o.output.empty()) write_json(to_json(cert), o.output);
  std::cout << "strength " << cert.strength << ", max defect "
            << detail::format17(cert.max_defect) << ", "
            << (cert.certified(o.tol) ? "certified" : "NOT certified") << "\n";
  return cert.certified(o.tol) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// wiring
// ---------------------------------------------------------------------------

void add_degree_flags(CLI::App* cmd, DegreeConfig& deg) {
  cmd->add_option("-n,--n", deg.n, "sample scale n (degree rules fill m and r)");
  cmd->add_option("-r,--degree", deg.r, "reconstruction degree r");
  cmd->add_option("-m,--m", deg.m, "interpolation degree m");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherefit: constrained least-squares polynomial fitting on the sphere"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read long-option defaults from an INI file");

  GenNodesOpts gen;
  CLI::App* cmd_gen = app.add_subcommand("gen-nodes", "generate or complete node sets");
  cmd_gen->add_option("--fibonacci", gen.fibonacci, "L quasi-uniform spiral nodes");
  cmd_gen->add_option("--random", gen.random, "L uniform random nodes");
  cmd_gen->add_option("--complete", gen.complete, "antipodally complete this node file");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed for --random")->default_val(1);
  cmd_gen->add_option("-o,--output", gen.output, "output node file")->required();

  SelectOpts select;
  CLI::App* cmd_sel = app.add_subcommand("select", "choose an interpolation subset");
  cmd_sel->add_option("--nodes", select.nodes, "input node file")->required();
  cmd_sel->add_option("--mode", select.mode, "antipodal (default) or fekete");
  add_degree_flags(cmd_sel, select.deg);
  cmd_sel->add_option("--threshold", select.threshold, "rank threshold");
  cmd_sel->add_option("--json", select.json_out, "selection JSON output");
  cmd_sel->add_option("--subset-xyz", select.subset_xyz, "subset node file output");

  FitOpts fit;
  CLI::App* cmd_f = app.add_subcommand("fit", "constrained least-squares fit");
  cmd_f->add_option("--nodes", fit.nodes, "sample node file")->required();
  cmd_f->add_option("--data", fit.data, "sample values, one per node");
  cmd_f->add_option("--function", fit.function, "built-in test function f1..f4");
  cmd_f->add_option("--subset", fit.subset_json, "selection JSON with constraint rows");
  cmd_f->add_option("--subset-indices", fit.subset_indices, "constraint rows, comma separated")
      ->delimiter(',');
  add_degree_flags(cmd_f, fit.deg);
  cmd_f->add_option("--path", fit.path, "auto|nullspace|kkt-direct|parity|design");
  cmd_f->add_option("--design-strength", fit.design_strength,
                    "verify the nodes as a design of this strength first");
  cmd_f->add_option("--threshold", fit.threshold, "rank threshold");
  cmd_f->add_flag("--no-strict", fit.no_strict, "exit 0 even when certificates fail");
  cmd_f->add_flag("--no-inertia", fit.no_inertia, "skip the saddle-point inertia certificate");
  cmd_f->add_option("-o,--output", fit.output, "fit JSON output");

  EvaluateOpts eval;
  CLI::App* cmd_e = app.add_subcommand("evaluate", "evaluate a stored fit at points");
  cmd_e->add_option("--fit", eval.fit, "fit JSON")->required();
  cmd_e->add_option("--points", eval.points, "evaluation node file")->required();
  cmd_e->add_option("--function", eval.function, "report E_inf against f1..f4");
  cmd_e->add_option("-o,--output", eval.output, "values output (.txt/.csv/.json)")->required();

  ValidateOpts val;
  CLI::App* cmd_v = app.add_subcommand("validate-degree", "pick r by validation error");
  cmd_v->add_option("--nodes", val.nodes, "base node family file(s)")->required();
  cmd_v->add_option("--functions", val.functions, "test functions (default f1..f4)")
      ->delimiter(',');
  cmd_v->add_option("--degrees", val.degrees, "candidate degrees, comma separated")
      ->delimiter(',')
      ->required();
  cmd_v->add_option("--grid", val.grid, "validation grid size");
  cmd_v->add_option("-o,--output", val.output, "validation JSON output");

  ReportOpts report;
  CLI::App* cmd_r = app.add_subcommand("report", "error sweeps and spectrum tables");
  cmd_r->add_option("--n-values", report.n_values, "sweep scales, comma separated")
      ->delimiter(',');
  cmd_r->add_option("--functions", report.functions, "test functions (default f1..f4)")
      ->delimiter(',');
  cmd_r->add_option("--grid", report.grid, "validation grid size");
  cmd_r->add_option("--csv", report.csv_out, "error table CSV output (sweep mode)");
  cmd_r->add_option("--spectrum-nodes", report.spectrum_nodes,
                    "design node file (spectrum mode)");
  add_degree_flags(cmd_r, report.deg);
  cmd_r->add_option("--subset", report.subset_json, "selection JSON for the constraint rows");
  cmd_r->add_option("--subset-indices", report.subset_indices,
                    "constraint rows, comma separated")
      ->delimiter(',');
  cmd_r->add_option("--json", report.json_out, "spectrum JSON output");

  DesignCheckOpts design;
  CLI::App* cmd_d = app.add_subcommand("design-check", "verify spherical-design strength");
  cmd_d->add_option("--nodes", design.nodes, "node file")->required();
  cmd_d->add_option("-k,--strength", design.strength, "design strength to test")->required();
  cmd_d->add_option("--tol", design.tol, "certification tolerance")->default_val(1e-10);
  cmd_d->add_option("-o,--output", design.output, "certificate JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_gen)) return cmd_gen_nodes(gen);
    if (app.got_subcommand(cmd_sel)) return cmd_select(select);
    if (app.got_subcommand(cmd_f)) return cmd_fit(fit);
    if (app.got_subcommand(cmd_e)) return cmd_evaluate(eval);
    if (app.got_subcommand(cmd_v)) return cmd_validate_degree(val);
    if (app.got_subcommand(cmd_r)) return cmd_report(report);
    if (app.got_subcommand(cmd_d)) return cmd_design_check(design);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OffSphereError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotAntipodal& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const AntipodalCollision& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const RankDeficient& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SingularKKT& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotUnisolvent& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
