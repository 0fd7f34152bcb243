#ifndef QUADHAM_SWEEP_HPP
#define QUADHAM_SWEEP_HPP

// Parameter sweeps and exceptional-point location by bisection.

#include <string>
#include <vector>

#include "io.hpp"

namespace quadham {

enum class SweepAxis { BReal, BImag, A };

inline std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::BReal: return "b_real";
    case SweepAxis::BImag: return "b_imag";
    case SweepAxis::A: return "a";
  }
  return "?";
}

inline SweepAxis sweep_axis_from_string(const std::string& s) {
  for (auto a : {SweepAxis::BReal, SweepAxis::BImag, SweepAxis::A})
    if (to_string(a) == s) return a;
  throw InvalidParam("unknown parameter axis '" + s + "' (expected b_real, b_imag or a)");
}

/// The template with one parameter replaced; the other component of b is kept.
inline ModelSpec with_parameter(ModelSpec spec, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::BReal: spec.b = {value, spec.b.imag()}; break;
    case SweepAxis::BImag: spec.b = {spec.b.real(), value}; break;
    case SweepAxis::A: spec.a = value; break;
  }
  return spec;
}

enum class OutputFormat { Csv, Json };

struct SweepConfig {
  ModelSpec model;
  SweepAxis parameter = SweepAxis::BReal;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;

  void validate() const {
    if (!(lo < hi)) throw InvalidParam("sweep range needs lo < hi");
    if (steps < 2) throw InvalidParam("sweep needs at least 2 steps");
  }
  double point(int k) const { return lo + (hi - lo) * k / (steps - 1); }
};

struct SweepRow {
  double param = 0.0;
  std::vector<cplx> eigenvalues;
  std::string classification;
  double min_gap = 0.0;
  std::string status = "ok";
};

inline SweepRow sweep_point(const ModelSpec& model, SweepAxis axis, double value) {
  SweepRow row;
  row.param = value;
  const int dim = 2 * model.K;
  try {
    const auto s = eigen(adjoint_of(with_parameter(model, axis, value)));
    row.eigenvalues = s.eigenvalues;
    row.classification = to_string(s.classification);
    row.min_gap = s.min_gap;
  } catch (const ConvergenceFailure& e) {
    row.eigenvalues.assign(static_cast<std::size_t>(dim), cplx(std::nan(""), std::nan("")));
    row.classification = "Unknown";
    row.min_gap = std::nan("");
    row.status = "ConvergenceFailure";
  }
  return row;
}

/// Rows are in ascending parameter order.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  validate(cfg.model);
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.steps));
  for (int k = 0; k < cfg.steps; ++k) rows.push_back(sweep_point(cfg.model, cfg.parameter, cfg.point(k)));
  return rows;
}

inline CsvTable sweep_table(const std::vector<SweepRow>& rows, int dim) {
  CsvTable t;
  t.header.push_back("param");
  for (int j = 1; j <= dim; ++j) t.header.push_back("re_lambda_" + std::to_string(j));
  for (int j = 1; j <= dim; ++j) t.header.push_back("im_lambda_" + std::to_string(j));
  t.header.insert(t.header.end(), {"classification", "min_gap", "status"});
  for (const auto& r : rows) {
    std::vector<std::string> cells{format_double(r.param)};
    for (const cplx l : r.eigenvalues) cells.push_back(format_double(l.real()));
    for (const cplx l : r.eigenvalues) cells.push_back(format_double(l.imag()));
    cells.insert(cells.end(), {r.classification, format_double(r.min_gap), r.status});
    t.rows.push_back(std::move(cells));
  }
  return t;
}

inline json sweep_json(const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
  json out;
  out["model"] = to_string(cfg.model.kind);
  out["parameter"] = to_string(cfg.parameter);
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"param", r.param},
                   {"eigenvalues", io::to_json(r.eigenvalues)},
                   {"classification", r.classification},
                   {"min_gap", r.min_gap},
                   {"status", r.status}});
  out["rows"] = arr;
  return out;
}

struct EpFindConfig {
  ModelSpec model;
  SweepAxis parameter = SweepAxis::BReal;
  double lo = 0.0;
  double hi = 1.0;
  double tolerance = 1e-10;
};

struct EpFindResult {
  double value = 0.0;
  double lo = 0.0, hi = 0.0;
  int iterations = 0;
  bool lo_real = false;
  std::pair<cplx, cplx> colliding;
  std::pair<int, int> defect;  // (algebraic, geometric) at the midpoint
};

inline bool real_spectrum(const ModelSpec& spec) { return eigen(adjoint_of(spec)).all_real(); }

/// Bisection on the real/complex predicate.
inline EpFindResult ep_find(const EpFindConfig& cfg) {
  if (!(cfg.lo < cfg.hi)) throw InvalidParam("bracket needs lo < hi");
  if (!(cfg.tolerance > 0.0)) throw InvalidParam("tolerance must be positive");
  validate(cfg.model);
  EpFindResult r;
  double lo = cfg.lo, hi = cfg.hi;
  const bool lo_real = real_spectrum(with_parameter(cfg.model, cfg.parameter, lo));
  const bool hi_real = real_spectrum(with_parameter(cfg.model, cfg.parameter, hi));
  if (lo_real == hi_real)
    throw BracketInvalid(std::string("both bracket ends classify as ") + (lo_real ? "real" : "complex"));
  r.lo_real = lo_real;
  while (hi - lo > cfg.tolerance && r.iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (real_spectrum(with_parameter(cfg.model, cfg.parameter, mid)) == lo_real)
      lo = mid;
    else
      hi = mid;
    ++r.iterations;
  }
  r.lo = lo;
  r.hi = hi;
  r.value = 0.5 * (lo + hi);

  const auto rep = adjoint_of(with_parameter(cfg.model, cfg.parameter, r.value));
  const auto s = eigen(rep, 1e-8);
  std::size_t bi = 0, bj = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < s.eigenvalues.size(); ++j)
      if (std::abs(s.eigenvalues[i] - s.eigenvalues[j]) < best) {
        best = std::abs(s.eigenvalues[i] - s.eigenvalues[j]);
        bi = i;
        bj = j;
      }
  r.colliding = {s.eigenvalues[bi], s.eigenvalues[bj]};
  // near a second-order EP the pair splits like sqrt(distance), so cluster
  // with a radius that covers the residual bracket
  const double radius = std::max(1e-6, 10.0 * std::sqrt(hi - lo + cfg.tolerance));
  r.defect = defect_info(rep, 0.5 * (r.colliding.first + r.colliding.second), radius);
  return r;
}

inline json ep_find_json(const EpFindConfig& cfg, const EpFindResult& r) {
  return {{"model", to_string(cfg.model.kind)},
          {"parameter", to_string(cfg.parameter)},
          {"value", r.value},
          {"bracket", {r.lo, r.hi}},
          {"iterations", r.iterations},
          {"real_below", r.lo_real},
          {"colliding_pair", {io::to_json(r.colliding.first), io::to_json(r.colliding.second)}},
          {"defect", {{"algebraic", r.defect.first}, {"geometric", r.defect.second}}}};
}

} // namespace quadham

#endif // QUADHAM_SWEEP_HPP
