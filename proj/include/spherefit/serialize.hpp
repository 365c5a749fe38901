#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "spherefit/diagnostics.hpp"
#include "spherefit/errors.hpp"
#include "spherefit/harmonics.hpp"
#include "spherefit/nodes.hpp"
#include "spherefit/selection.hpp"
#include "spherefit/solver.hpp"
#include "spherefit/vandermonde.hpp"

namespace spherefit {

inline constexpr const char* schema_tag = "spherefit/1";

using json = nlohmann::json;

namespace detail {

inline json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

inline Eigen::VectorXd vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("expected array for '" + field + "'");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError("non-numeric entry in '" + field + "'");
    v[Eigen::Index(i)] = j[i].get<double>();
  }
  return v;
}

}  // namespace detail

inline json to_json(const RankReport& rep) {
  json j;
  j["numerical_rank"] = rep.numerical_rank;
  j["sigma_max"] = rep.sigma_max;
  j["sigma_min"] = rep.sigma_min;
  j["rel_threshold"] = rep.rel_threshold;
  if (std::isfinite(rep.condition_number)) {
    j["condition_number"] = rep.condition_number;
  } else {
    j["condition_number"] = "inf";
  }
  return j;
}

inline json to_json(const Inertia& in) { return json::array({in.n_plus, in.n_minus, in.n_zero}); }

inline json to_json(const DesignCertificate& cert) {
  json j;
  j["schema"] = schema_tag;
  j["strength"] = cert.strength;
  j["max_defect"] = cert.max_defect;
  j["certified"] = cert.certified();
  return j;
}

inline json to_json(const QuasiOptReport& rep) {
  json j;
  j["schema"] = schema_tag;
  j["lebesgue"] = rep.lebesgue;
  j["norming"] = rep.norming;
  j["prefactor"] = rep.prefactor;
  j["grid_size"] = rep.grid_size;
  return j;
}

inline json to_json(const SpectrumReport& rep) {
  json j;
  j["schema"] = schema_tag;
  j["alpha"] = rep.alpha;
  j["alpha_multiplicity"] = rep.alpha_multiplicity;
  j["mu"] = detail::vector_to_json(rep.mu);
  j["lambda_plus"] = detail::vector_to_json(rep.lambda_plus);
  j["lambda_minus"] = detail::vector_to_json(rep.lambda_minus);
  j["singular_values"] = detail::vector_to_json(rep.singular_values);
  j["eigenvalues_numeric"] = detail::vector_to_json(rep.eigenvalues_numeric);
  j["kappa2_formula"] = rep.kappa2_formula;
  j["kappa2_numeric"] = rep.kappa2_numeric;
  return j;
}

inline json to_json(const FitResult& fit) {
  json j;
  j["schema"] = schema_tag;
  j["degree"] = fit.basis.degree();
  json ordering = json::array();
  for (const HarmonicIndex& idx : fit.basis.ordering()) {
    ordering.push_back(json::array({idx.ell, idx.m}));
  }
  j["ordering"] = std::move(ordering);
  j["coeffs"] = detail::vector_to_json(fit.coeffs);
  j["multipliers"] = detail::vector_to_json(fit.multipliers);
  j["residual_norm"] = fit.residual_norm;
  j["constraint_defect"] = fit.constraint_defect;
  j["orthogonality_defect"] = fit.orthogonality_defect;
  j["data_inf_norm"] = fit.data_inf_norm;
  j["path"] = to_string(fit.path_taken);
  j["inertia"] = fit.inertia ? to_json(*fit.inertia) : json(nullptr);
  if (!fit.warnings.empty()) j["warnings"] = fit.warnings;
  return j;
}

/// Rebuild a FitResult from its JSON form. The basis is reconstructed from
/// the degree and recognized by comparing the stored ordering against the
/// standard and parity-ordered layouts.
inline FitResult fit_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != schema_tag) {
    throw ParseError("fit_from_json: missing or wrong schema tag (want '" +
                     std::string(schema_tag) + "')");
  }
  const int degree = j.at("degree").get<int>();
  if (degree < 0 || degree > 512) throw ParseError("fit_from_json: implausible degree");
  const auto& ord = j.at("ordering");
  auto matches = [&ord](const HarmonicBasis& b) {
    if (ord.size() != size_t(b.size())) return false;
    for (int k = 0; k < b.size(); ++k) {
      const auto& e = ord[size_t(k)];
      if (!e.is_array() || e.size() != 2) return false;
      if (e[0].get<int>() != b.at(k).ell || e[1].get<int>() != b.at(k).m) return false;
    }
    return true;
  };

  FitResult fit;
  if (matches(HarmonicBasis(degree))) {
    fit.basis = HarmonicBasis(degree);
  } else if (matches(HarmonicBasis(degree, true))) {
    fit.basis = HarmonicBasis(degree, true);
  } else {
    throw ParseError("fit_from_json: ordering is neither standard nor parity layout");
  }
  fit.coeffs = detail::vector_from_json(j.at("coeffs"), "coeffs");
  if (fit.coeffs.size() != fit.basis.size()) {
    throw ParseError("fit_from_json: coefficient count does not match degree");
  }
  fit.multipliers = detail::vector_from_json(j.at("multipliers"), "multipliers");
  fit.residual_norm = j.at("residual_norm").get<double>();
  fit.constraint_defect = j.at("constraint_defect").get<double>();
  fit.orthogonality_defect = j.value("orthogonality_defect", 0.0);
  fit.data_inf_norm = j.value("data_inf_norm", 0.0);
  fit.path_taken = solver_path_from_string(j.value("path", "nullspace"));
  if (j.contains("inertia") && j["inertia"].is_array() && j["inertia"].size() == 3) {
    fit.inertia = Inertia{j["inertia"][0].get<int>(), j["inertia"][1].get<int>(),
                          j["inertia"][2].get<int>()};
  }
  return fit;
}

/// Selection output; `node_indices` are row indices into the node file the
/// selection was run against, which for the antipodal strategy means both
/// members of every chosen pair.
inline json to_json(const SelectionResult& sel, const std::vector<int>& node_indices) {
  json j;
  j["schema"] = schema_tag;
  j["indices"] = node_indices;
  j["m"] = sel.m ? json(*sel.m) : json(nullptr);
  j["M"] = sel.subset.size();
  json hist = json::array();
  for (const SelectionStep& step : sel.history) {
    hist.push_back({{"action", step.action == SelectionStep::Action::Added ? "add" : "remove"},
                    {"index", step.index},
                    {"sigma_min_even", step.sigma_min_even},
                    {"sigma_min_odd", step.sigma_min_odd}});
  }
  j["sigma_history"] = std::move(hist);
  j["rank_certificate"] = sel.rank_certificate ? to_json(*sel.rank_certificate) : json(nullptr);
  j["k_max"] = sel.k_max;
  j["additivity_ok"] = sel.additivity_ok;
  return j;
}

/// The constraint-row indices stored in a selection JSON.
inline std::vector<int> selection_indices_from_json(const json& j) {
  if (!j.is_object() || j.value("schema", "") != schema_tag) {
    throw ParseError("selection JSON: missing or wrong schema tag");
  }
  if (!j.contains("indices") || !j["indices"].is_array()) {
    throw ParseError("selection JSON: missing 'indices' array");
  }
  std::vector<int> rows;
  for (const auto& e : j["indices"]) {
    if (!e.is_number_integer()) throw ParseError("selection JSON: non-integer index");
    rows.push_back(e.get<int>());
  }
  return rows;
}

inline void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_json: cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("read_json: cannot open '" + path + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("read_json: '" + path + "': " + e.what());
  }
}

/// One row of the error tables behind the convergence figures.
struct ErrorTableRow {
  int n = 0;
  int r = 0;
  int m = 0;
  std::string function_id;
  double e_inf = 0;
};

inline void write_error_table_csv(const std::vector<ErrorTableRow>& rows,
                                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_error_table_csv: cannot open '" + path + "'");
  out << "n,r,m,function,E_inf\n";
  for (const ErrorTableRow& row : rows) {
    out << row.n << "," << row.r << "," << row.m << "," << row.function_id << ","
        << detail::format17(row.e_inf) << "\n";
  }
}

}  // namespace spherefit
