#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "liebi/bialgebra.hpp"
#include "liebi/catalog.hpp"
#include "liebi/error.hpp"
#include "liebi/group_flow.hpp"
#include "liebi/lie_core.hpp"
#include "liebi/loop_fourier.hpp"
#include "liebi/report.hpp"
#include "liebi/torus_weight.hpp"

namespace liebi::io {

using nlohmann::json;

/// Scalars are numbers or [re, im] pairs.
inline cplx scalar_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw StructuralError("expected a number or [re, im] pair, got " + j.dump());
}

inline json scalar_to_json(cplx c) {
  if (c.imag() == 0.0) return c.real();
  return json::array({c.real(), c.imag()});
}

inline Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw StructuralError("expected a matrix as an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw StructuralError("matrix rows have different lengths");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c]);
  }
  return m;
}

inline json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

/// Tensor entry [i, j, k, re] or [i, j, k, re, im]; re may itself be an [re, im] pair.
inline std::tuple<std::size_t, std::size_t, std::size_t, cplx> tensor_entry(const json& e, const char* what) {
  if (!e.is_array() || (e.size() != 4 && e.size() != 5))
    throw StructuralError(std::string(what) + " entries are [i, j, k, re] or [i, j, k, re, im]");
  for (std::size_t p = 0; p < 3; ++p)
    if (!e[p].is_number_unsigned()) throw StructuralError(std::string(what) + " indices must be nonnegative integers");
  const cplx v = e.size() == 4 ? scalar_from_json(e[3]) : cplx(e[3].get<double>(), e[4].get<double>());
  return {e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::size_t>(), v};
}

inline json tensor_entry_to_json(std::size_t i, std::size_t j, std::size_t k, cplx v) {
  if (v.imag() == 0.0) return json::array({i, j, k, v.real()});
  return json::array({i, j, k, v.real(), v.imag()});
}

/// {"dim", "field", "labels", "structure": [[i, j, k, re, im], ...] (i < j, antisymmetric
/// completion implied), "form": n x n rows}.
inline LieAlgebra algebra_from_json(const json& j) {
  if (!j.is_object()) throw StructuralError("algebra must be a JSON object");
  if (!j.contains("dim") || !j.at("dim").is_number_unsigned() || j.at("dim").get<std::size_t>() == 0)
    throw StructuralError("algebra needs a positive integer \"dim\"");
  const auto dim = j.at("dim").get<std::size_t>();
  const Field field = field_from_string(j.value("field", std::string("real")));
  std::vector<std::string> labels = j.value("labels", std::vector<std::string>{});
  std::optional<Mat> form;
  if (j.contains("form")) form = matrix_from_json(j.at("form"));
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, cplx>> entries;
  for (const auto& e : j.value("structure", json::array())) {
    auto t = tensor_entry(e, "structure");
    if (std::get<0>(t) >= std::get<1>(t)) throw StructuralError("structure entries must have i < j");
    entries.push_back(t);
  }
  return LieAlgebra::from_brackets(dim, field, std::move(labels), entries, std::move(form));
}

inline json algebra_to_json(const LieAlgebra& g) {
  json st = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = i + 1; j < g.dim(); ++j)
      for (std::size_t k = 0; k < g.dim(); ++k)
        if (g.c(i, j, k) != cplx(0.0)) st.push_back(tensor_entry_to_json(i, j, k, g.c(i, j, k)));
  json out = {{"dim", g.dim()}, {"field", to_string(g.field())}, {"labels", g.labels()}, {"structure", st}};
  if (g.form()) out["form"] = matrix_to_json(*g.form());
  return out;
}

/// Catalog name or inline algebra object.
inline AlgebraPtr algebra_ref(const json& j) {
  if (j.is_string()) return catalog::matrix_algebra_by_name(j.get<std::string>()).algebra;
  return share(algebra_from_json(j));
}

/// The algebra of a file that either is an algebra object or names one under "algebra".
inline AlgebraPtr attached_algebra(const json& j) {
  if (j.contains("algebra")) return algebra_ref(j.at("algebra"));
  return share(algebra_from_json(j));
}

inline std::optional<std::vector<Mat>> realization_from_json(const json& j) {
  if (j.contains("realization")) {
    std::vector<Mat> rep;
    for (const auto& m : j.at("realization")) rep.push_back(matrix_from_json(m));
    return rep;
  }
  if (j.contains("algebra") && j.at("algebra").is_string()) {
    return catalog::matrix_algebra_by_name(j.at("algebra").get<std::string>()).realization.basis();
  }
  return std::nullopt;
}

/// Algebra file plus {"delta": [[i, a, b, re, im], ...]} with a < b; optional
/// "realization" (matrices) and "group" tag for integration.
struct BialgebraFile {
  Bialgebra bi;
  std::optional<std::vector<Mat>> realization;
  std::string group;
};

inline BialgebraFile bialgebra_from_json(const json& j) {
  AlgebraPtr g = attached_algebra(j);
  const std::size_t n = g->dim();
  std::vector<cplx> d(n * n * n, cplx(0.0));
  for (const auto& e : j.value("delta", json::array())) {
    const auto [i, a, b, v] = tensor_entry(e, "delta");
    if (i >= n || a >= n || b >= n) throw StructuralError("delta entry index out of range");
    if (a >= b) throw StructuralError("delta entries must have a < b");
    d[(i * n + a) * n + b] = v;
    d[(i * n + b) * n + a] = -v;
  }
  std::string group = "GL";
  if (j.contains("group"))
    group = j.at("group").get<std::string>();
  else if (j.contains("algebra") && j.at("algebra").is_string())
    group = catalog::matrix_algebra_by_name(j.at("algebra").get<std::string>()).group;
  return BialgebraFile{Bialgebra(g, std::move(d)), realization_from_json(j), group};
}

inline json bialgebra_to_json(const Bialgebra& bi, const std::vector<Mat>* realization = nullptr,
                              const std::string& group = "") {
  json out = algebra_to_json(*bi.g());
  json delta = json::array();
  const std::size_t n = bi.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (bi.d(i, a, b) != cplx(0.0)) delta.push_back(tensor_entry_to_json(i, a, b, bi.d(i, a, b)));
  out["delta"] = delta;
  if (realization) {
    json reps = json::array();
    for (const auto& m : *realization) reps.push_back(matrix_to_json(m));
    out["realization"] = reps;
  }
  if (!group.empty()) out["group"] = group;
  return out;
}

/// Algebra file plus {"weights": [m_1, ..., m_dim]}.
struct WeightingFile {
  TorusWeighting weighting;
  std::optional<std::vector<Mat>> realization;
};

inline WeightingFile weighting_from_json(const json& j) {
  AlgebraPtr g = attached_algebra(j);
  if (!j.contains("weights")) throw StructuralError("weighting file needs \"weights\"");
  std::vector<int> w = j.at("weights").get<std::vector<int>>();
  if (w.size() != g->dim()) throw StructuralError("weights must have one entry per basis element");
  std::optional<std::vector<Mat>> rep = realization_from_json(j);
  return WeightingFile{TorusWeighting(g, std::move(w)), std::move(rep)};
}

/// {"grid": T, "samples": [[t, x...], ...], "interp": "linear" | "cubic"}.
inline AlgebraPath path_from_json(const json& j, std::size_t dim) {
  const auto T = j.at("grid").get<std::size_t>();
  const auto& s = j.at("samples");
  if (!s.is_array() || s.size() != T) throw StructuralError("path grid size does not match sample count");
  std::vector<double> t;
  std::vector<Vec> x;
  for (const auto& row : s) {
    if (!row.is_array() || row.size() != dim + 1) throw StructuralError("path sample has the wrong length");
    t.push_back(row[0].get<double>());
    Vec v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = scalar_from_json(row[i + 1]);
    x.push_back(v);
  }
  const std::string interp = j.value("interp", std::string("cubic"));
  if (interp != "linear" && interp != "cubic") throw StructuralError("interp must be linear or cubic");
  return AlgebraPath::from_samples(t, x, interp == "linear" ? AlgebraPath::Interp::linear : AlgebraPath::Interp::cubic);
}

/// {"base": "witt" | catalog name | algebra object, "modes": [[m, x...], ...]}.
inline LoopElement loop_from_json(const json& j) {
  const auto& base = j.at("base");
  LoopAlgebraPtr L;
  if (base.is_string() && base.get<std::string>() == "witt")
    L = LoopAlgebra::witt();
  else
    L = LoopAlgebra::current(algebra_ref(base));
  std::map<int, Vec> modes;
  for (const auto& row : j.at("modes")) {
    if (!row.is_array() || row.size() != L->dim() + 1) throw StructuralError("loop mode entry has the wrong length");
    Vec v(static_cast<Eigen::Index>(L->dim()));
    for (std::size_t i = 0; i < L->dim(); ++i) v[static_cast<Eigen::Index>(i)] = scalar_from_json(row[i + 1]);
    const int m = row[0].get<int>();
    if (modes.count(m)) throw StructuralError("duplicate loop mode " + std::to_string(m));
    modes[m] = v;
  }
  return loop_element(L, std::move(modes));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw StructuralError("cannot parse '" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write '" + path + "'");
  out << text;
}

/// Header m,norm,fitted_model_value; LF line endings.
inline std::string decay_csv(const DecayReport& r) {
  std::ostringstream os;
  os << "m,norm,fitted_model_value\n";
  char buf[128];
  for (int m : r.modes) {
    // The smooth model |m|^-k is undefined at m = 0; leave the field empty.
    if (m == 0 && r.regime == DecayRegime::smooth)
      std::snprintf(buf, sizeof buf, "%d,%.17g,\n", m, r.norms.at(m));
    else
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", m, r.norms.at(m), r.model(m));
    os << buf;
  }
  return os.str();
}

inline json decay_to_json(const DecayReport& r) {
  json norms = json::object();
  for (const auto& [m, n] : r.norms) norms[std::to_string(m)] = n;
  return {{"regime", to_string(r.regime)},
          {"modes", r.modes},
          {"used_modes", r.used},
          {"norms", norms},
          {"slope", r.slope},
          {"intercept", r.intercept},
          {r.regime == DecayRegime::smooth ? "fitted_k" : "fitted_log_rho", r.fitted},
          {"fit_residual", r.residual}};
}

inline SuiteReport suite_report_from_json(const json& j) {
  SuiteReport s;
  s.suite = j.at("suite").get<std::string>();
  s.inputs_digest = j.at("inputs_digest").get<std::string>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.steps = j.at("steps").get<int>();
  s.wall_clock_ms = j.value("wall_clock_ms", 0.0);
  for (const auto& c : j.at("checks")) s.checks.push_back(check_report_from_json(c));
  return s;
}

}  // namespace liebi::io
