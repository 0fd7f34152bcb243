// quadham: command-line front end.
//
// Exit codes: 0 success, 1 internal or convergence failure, 2 invalid input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "quadham/quadham.hpp"

using namespace quadham;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

struct Options {
  std::string model_file;
  std::string builtin;
  double a = 1.0;
  std::string b = "0";
  std::string param = "b_real";
  std::string range;
  int steps = 21;
  double tol = 1e-10;
  std::string out;
  std::string format = "csv";
  std::string times = "0:1:11";
};

cplx parse_complex(const std::string& text) {
  std::stringstream ss(text);
  std::string re, im;
  std::getline(ss, re, ',');
  std::getline(ss, im);
  try {
    std::size_t used = 0;
    const double r = std::stod(re, &used);
    if (used != re.size()) throw std::invalid_argument(re);
    double i = 0.0;
    if (!im.empty()) {
      i = std::stod(im, &used);
      if (used != im.size()) throw std::invalid_argument(im);
    }
    return {r, i};
  } catch (const std::logic_error&) {
    throw ParseError("--b expects <re>[,<im>], got '" + text + "'");
  }
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("--range expects <lo>:<hi>, got '" + text + "'");
  try {
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw ParseError("--range expects <lo>:<hi>, got '" + text + "'");
  }
}

std::vector<double> parse_times(const std::string& text) {
  std::stringstream ss(text);
  std::string t0, t1, n;
  std::getline(ss, t0, ':');
  std::getline(ss, t1, ':');
  std::getline(ss, n);
  try {
    const double lo = std::stod(t0), hi = std::stod(t1);
    const int count = std::stoi(n);
    if (count < 1) throw ParseError("--times needs at least one sample");
    std::vector<double> times;
    for (int k = 0; k < count; ++k) times.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
    return times;
  } catch (const std::logic_error&) {
    throw ParseError("--times expects <t0>:<t1>:<n>, got '" + text + "'");
  }
}

ModelFile resolve_model(const Options& o) {
  if (!o.model_file.empty()) return load_model_file(o.model_file);
  if (o.builtin.empty()) throw ParseError("give either --model <file> or --builtin <name>");
  ModelFile mf;
  mf.spec.kind = model_kind_from_string(o.builtin);
  if (mf.spec.kind == ModelKind::Custom) throw ParseError("custom models need a model file");
  mf.spec.K = mf.spec.kind == ModelKind::OneD ? 1 : 2;
  mf.spec.a = o.a;
  mf.spec.b = parse_complex(o.b);
  validate(mf.spec);
  return mf;
}

std::vector<SymmetrySpec> symmetries_for(const ModelFile& mf) {
  if (!mf.symmetries.empty()) return mf.symmetries;
  if (mf.spec.K <= 2) return builtin_symmetries(mf.spec.K);
  return {};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw ParseError("cannot write '" + o.out + "'");
  f << text;
}

OutputFormat output_format(const Options& o) {
  if (o.format == "csv") return OutputFormat::Csv;
  if (o.format == "json") return OutputFormat::Json;
  throw ParseError("--format must be csv or json");
}

int cmd_analyze(const Options& o) {
  const ModelFile mf = resolve_model(o);
  const auto inst = instantiate(mf.spec);
  const AdjointRep rep = build_adjoint(inst.hamiltonian);
  const SpectrumReport s = eigen(rep);
  const bool hermitian = is_hermitian(inst.hamiltonian);

  json report = spectrum_to_json(s);
  report["model"] = model_to_json(mf);
  report["hamiltonian"] = inst.hamiltonian.to_string();
  report["hermitian"] = hermitian;
  report["matrixH"] = io::to_json(rep.H);
  report["matrixU"] = io::to_json(rep.U);
  report["structure"] = structure_to_json(check_structure(rep, hermitian));
  if (inst.expected) {
    report["expected_xi"] = io::to_json(inst.expected->xi);
    report["expected_eigenvalues"] = io::to_json(inst.expected->eigenvalues);
  }
  json syms = json::array();
  for (const auto& sym : symmetries_for(mf)) {
    const auto r = check_symmetry(rep, sym, 1e-12, s);
    std::vector<ExactnessVerdict> verdicts;
    if (sym.kind == SymmetryKind::Antiunitary && r.commutes) verdicts = exactness(rep, sym, s);
    syms.push_back(symmetry_to_json(r, verdicts));
  }
  report["symmetries"] = syms;
  try {
    const auto L = ladder_system(rep, inst.hamiltonian);
    report["E0"] = io::to_json(L.E0);
    report["sigma"] = io::to_json(L.sigma);
  } catch (const Error& e) {
    report["E0"] = nullptr;
    report["E0_note"] = e.what();
  }
  emit(o, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const Options& o) {
  SweepConfig cfg;
  cfg.model = resolve_model(o).spec;
  cfg.parameter = sweep_axis_from_string(o.param);
  std::tie(cfg.lo, cfg.hi) = parse_range(o.range.empty() ? "0:1" : o.range);
  cfg.steps = o.steps;
  cfg.output = o.out;
  cfg.format = output_format(o);
  const auto rows = run_sweep(cfg);
  if (cfg.format == OutputFormat::Json) {
    emit(o, sweep_json(cfg, rows).dump(2) + "\n");
  } else {
    std::ostringstream os;
    write_csv(os, sweep_table(rows, 2 * cfg.model.K));
    emit(o, os.str());
  }
  return kExitOk;
}

int cmd_ep_find(const Options& o) {
  if (o.range.empty()) throw ParseError("ep-find needs --range <lo>:<hi>");
  EpFindConfig cfg;
  cfg.model = resolve_model(o).spec;
  cfg.parameter = sweep_axis_from_string(o.param);
  std::tie(cfg.lo, cfg.hi) = parse_range(o.range);
  cfg.tolerance = o.tol;
  emit(o, ep_find_json(cfg, ep_find(cfg)).dump(2) + "\n");
  return kExitOk;
}

int cmd_symmetry_check(const Options& o) {
  const ModelFile mf = resolve_model(o);
  const AdjointRep rep = adjoint_of(mf.spec);
  const SpectrumReport s = eigen(rep);
  json out;
  out["model"] = to_string(mf.spec.kind);
  out["classification"] = to_string(s.classification);
  out["eigenvalues"] = io::to_json(s.eigenvalues);
  json syms = json::array();
  for (const auto& sym : symmetries_for(mf)) {
    const auto r = check_symmetry(rep, sym, 1e-12, s);
    std::vector<ExactnessVerdict> verdicts;
    if (sym.kind == SymmetryKind::Antiunitary && r.commutes) verdicts = exactness(rep, sym, s);
    syms.push_back(symmetry_to_json(r, verdicts));
  }
  out["symmetries"] = syms;
  emit(o, out.dump(2) + "\n");
  return kExitOk;
}

int cmd_evolve(const Options& o) {
  const ModelFile mf = resolve_model(o);
  const AdjointRep rep = adjoint_of(mf.spec);
  const auto samples = evolve(rep, parse_times(o.times));
  const int dim = rep.dim();
  if (output_format(o) == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& smp : samples) arr.push_back({{"t", smp.t}, {"coefficients", io::to_json(smp.coefficients)}});
    emit(o, json{{"convention", "row j: O_j(t) = sum_k c_jk O_k"}, {"samples", arr}}.dump(2) + "\n");
    return kExitOk;
  }
  CsvTable t;
  t.header.push_back("t");
  for (const char* part : {"re", "im"})
    for (int j = 1; j <= dim; ++j)
      for (int k = 1; k <= dim; ++k)
        t.header.push_back(std::string(part) + "_c_" + std::to_string(j) + "_" + std::to_string(k));
  for (const auto& smp : samples) {
    std::vector<std::string> row{format_double(smp.t)};
    for (int part = 0; part < 2; ++part)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          const cplx c = smp.coefficients(j, k);
          row.push_back(format_double(part == 0 ? c.real() : c.imag()));
        }
    t.rows.push_back(std::move(row));
  }
  std::ostringstream os;
  write_csv(os, t);
  emit(o, os.str());
  return kExitOk;
}

int cmd_verify() {
  return print_verification(std::cout, run_verification()) ? kExitOk : kExitFailure;
}

void add_model_flags(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model_file, "Model file (JSON)");
  sub->add_option("--builtin", o.builtin, "Builtin model: oned, coupled_xy, coupled_pp, angular");
  sub->add_option("--a", o.a, "Parameter a (2D builtins)");
  sub->add_option("--b", o.b, "Parameter b as <re>[,<im>]");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic analysis of (non-)Hermitian quadratic Hamiltonians"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Adjoint matrix, spectrum, structure, symmetries and E0");
  add_model_flags(analyze, o);
  analyze->add_option("--out", o.out, "Output file (default: stdout)");

  auto* sweep = app.add_subcommand("sweep", "Spectrum along one parameter axis");
  add_model_flags(sweep, o);
  sweep->add_option("--param", o.param, "b_real, b_imag or a");
  sweep->add_option("--range", o.range, "<lo>:<hi>");
  sweep->add_option("--steps", o.steps, "Number of grid points (>= 2)");
  sweep->add_option("--out", o.out, "Output file (default: stdout)");
  sweep->add_option("--format", o.format, "csv or json");

  auto* ep = app.add_subcommand("ep-find", "Locate a real/complex boundary by bisection");
  add_model_flags(ep, o);
  ep->add_option("--param", o.param, "b_real, b_imag or a");
  ep->add_option("--range", o.range, "Bracket <lo>:<hi>");
  ep->add_option("--tol", o.tol, "Bracket width at which to stop");
  ep->add_option("--out", o.out, "Output file (default: stdout)");

  auto* sym = app.add_subcommand("symmetry-check", "Check unitary/antiunitary symmetries");
  add_model_flags(sym, o);
  sym->add_option("--out", o.out, "Output file (default: stdout)");

  auto* evo = app.add_subcommand("evolve", "Heisenberg evolution of the basis operators");
  add_model_flags(evo, o);
  evo->add_option("--times", o.times, "<t0>:<t1>:<n>");
  evo->add_option("--out", o.out, "Output file (default: stdout)");
  evo->add_option("--format", o.format, "csv or json");

  auto* verify = app.add_subcommand("verify", "Run the reference checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (ep->parsed()) return cmd_ep_find(o);
    if (sym->parsed()) return cmd_symmetry_check(o);
    if (evo->parsed()) return cmd_evolve(o);
    if (verify->parsed()) return cmd_verify();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvalidParam& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InhomogeneousHamiltonian& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const BracketInvalid& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
