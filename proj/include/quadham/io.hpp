#ifndef QUADHAM_IO_HPP
#define QUADHAM_IO_HPP

// Model files and report serialization. Complex numbers are written as
// [re, im]; matrices as arrays of rows.
//
// Model file:
//   {
//     "model": "oned" | "coupled_xy" | "coupled_pp" | "angular" | "custom",
//     "K": 2,                       (optional for builtins)
//     "a": 1.0,                     (2D builtins)
//     "b": [re, im],                (builtins; a bare number is read as real)
//     "constant": 0.0,              (optional)
//     "gamma": [[[re, im], ...]],   (custom, 2K x 2K)
//     "symmetries": [ {"kind": "unitary" | "antiunitary", "label": "...",
//                      "matrix": [[[re, im], ...]]} ]
//   }

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "models.hpp"
#include "symmetry.hpp"

namespace quadham {

using nlohmann::json;

struct ModelFile {
  ModelSpec spec;
  std::vector<SymmetrySpec> symmetries;
};

namespace io {

inline json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx c : v) out.push_back(to_json(c));
  return out;
}

inline cplx complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError(where + ": expected a number or [re, im]");
}

inline Matrix matrix_from_json(const json& j, int dim, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw DimensionMismatch(where + ": expected " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw DimensionMismatch(where + ": row " + std::to_string(i) + " must have " +
                              std::to_string(dim) + " entries");
    for (int k = 0; k < dim; ++k)
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], where);
  }
  return m;
}

} // namespace io

inline ModelFile parse_model(const json& j) {
  if (!j.is_object()) throw ParseError("model file must hold a JSON object");
  if (!j.contains("model")) throw ParseError("missing field 'model'");
  ModelFile mf;
  ModelSpec& spec = mf.spec;
  spec.kind = model_kind_from_string(j.at("model").get<std::string>());
  spec.K = spec.kind == ModelKind::OneD ? 1 : 2;
  if (j.contains("K")) spec.K = j.at("K").get<int>();
  if (spec.K < 1) throw InvalidParam("K must be positive");
  if (j.contains("a")) spec.a = j.at("a").get<double>();
  if (j.contains("b")) spec.b = io::complex_from_json(j.at("b"), "b");
  if (j.contains("constant")) spec.constant = j.at("constant").get<double>();
  if (spec.kind == ModelKind::Custom) {
    if (!j.contains("gamma")) throw ParseError("custom model needs 'gamma'");
    spec.gamma = GammaMatrix(spec.K, io::matrix_from_json(j.at("gamma"), 2 * spec.K, "gamma"));
  }
  if (j.contains("symmetries")) {
    for (const json& s : j.at("symmetries")) {
      SymmetrySpec sym;
      const auto kind = s.at("kind").get<std::string>();
      if (kind == "unitary")
        sym.kind = SymmetryKind::Unitary;
      else if (kind == "antiunitary")
        sym.kind = SymmetryKind::Antiunitary;
      else
        throw ParseError("symmetry kind must be 'unitary' or 'antiunitary', got '" + kind + "'");
      sym.label = s.value("label", std::string{});
      sym.matrix = io::matrix_from_json(s.at("matrix"), 2 * spec.K, "symmetry '" + sym.label + "'");
      mf.symmetries.push_back(std::move(sym));
    }
  }
  validate(spec);
  return mf;
}

inline ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return parse_model(j);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline json model_to_json(const ModelFile& mf) {
  json j;
  j["model"] = to_string(mf.spec.kind);
  j["K"] = mf.spec.K;
  j["a"] = mf.spec.a;
  j["b"] = io::to_json(mf.spec.b);
  j["constant"] = mf.spec.constant;
  if (mf.spec.gamma) j["gamma"] = io::to_json(mf.spec.gamma->entries());
  json syms = json::array();
  for (const auto& s : mf.symmetries)
    syms.push_back({{"kind", to_string(s.kind)}, {"label", s.label}, {"matrix", io::to_json(s.matrix.eval())}});
  j["symmetries"] = syms;
  return j;
}

inline json spectrum_to_json(const SpectrumReport& s) {
  json j;
  j["eigenvalues"] = io::to_json(s.eigenvalues);
  json pairs = json::array();
  for (const auto& [a, b] : s.pairs) pairs.push_back({a + 1, b + 1});
  j["pairing"] = pairs;
  j["classification"] = to_string(s.classification);
  j["charpoly"] = io::to_json(s.charpoly);
  json defects = json::array();
  for (const auto& d : s.defects)
    defects.push_back({{"eigenvalue", io::to_json(d.eigenvalue)},
                       {"algebraic", d.algebraic},
                       {"geometric", d.geometric}});
  j["defects"] = defects;
  j["max_imag"] = s.max_imag;
  j["min_gap"] = s.min_gap;
  return j;
}

inline json structure_to_json(const StructureReport& r) {
  json j;
  j["uh_symmetric"] = r.uh_symmetric;
  j["uh_residual"] = r.uh_residual;
  j["entries_antireal"] = r.entries_antireal ? json(*r.entries_antireal) : json(nullptr);
  j["pseudo_hermitian"] = r.pseudo_hermitian ? json(*r.pseudo_hermitian) : json(nullptr);
  return j;
}

inline json symmetry_to_json(const SymmetryCheckReport& r,
                             const std::vector<ExactnessVerdict>& verdicts = {}) {
  json j;
  j["label"] = r.label;
  j["kind"] = to_string(r.kind);
  j["commutes"] = r.commutes;
  j["commute_residual"] = r.commute_residual;
  j["u_relation"] = r.u_relation;
  j["u_residual"] = r.u_residual;
  j["conjugation_closed"] = r.conjugation_closed ? json(*r.conjugation_closed) : json(nullptr);
  if (!verdicts.empty()) {
    json v = json::array();
    for (const auto& e : verdicts) v.push_back(to_string(e.verdict));
    j["exactness"] = v;
  }
  return j;
}

/// 17 significant digits, enough for an exact round trip of any double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Minimal CSV table: header plus rows of string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline void write_csv(std::ostream& os, const CsvTable& t) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string text;
  bool first = true;
  while (std::getline(is, text)) {
    if (text.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first)
      t.header = std::move(cells);
    else
      t.rows.push_back(std::move(cells));
    first = false;
  }
  return t;
}

} // namespace quadham

#endif // QUADHAM_IO_HPP
