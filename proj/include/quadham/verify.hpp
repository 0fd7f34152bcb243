#ifndef QUADHAM_VERIFY_HPP
#define QUADHAM_VERIFY_HPP

// Reference table of closed forms, adjoint matrices and symmetry
// relations. Used by `quadham verify`.

#include <functional>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "sweep.hpp"

namespace quadham {

struct VerifyCheck {
  std::string name;
  std::string expected;
  std::string got;
  double tolerance = 0.0;
  bool pass = false;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

inline std::string fmt(cplx c) {
  std::ostringstream os;
  os << std::setprecision(10) << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

inline VerifyCheck scalar_check(std::string name, cplx expected, cplx got, double tol) {
  return {std::move(name), fmt(expected), fmt(got), tol, std::abs(expected - got) <= tol};
}

inline VerifyCheck matrix_check(std::string name, const Matrix& expected, const Matrix& got, double tol) {
  const double err = expected.rows() == got.rows() && expected.cols() == got.cols()
                         ? max_abs(expected - got)
                         : std::numeric_limits<double>::infinity();
  return {std::move(name), "matrix", "max |diff| = " + fmt(err), tol, err <= tol};
}

inline VerifyCheck bool_check(std::string name, bool expected, bool got) {
  return {std::move(name), expected ? "true" : "false", got ? "true" : "false", 0.0, expected == got};
}

/// Smallest max-distance between `a` and a permutation of `b` (greedy).
inline double spectrum_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return multiset_distance(a, b);
}

inline Matrix rows(std::initializer_list<std::initializer_list<cplx>> r) {
  Matrix m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (const cplx v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

} // namespace detail

inline std::vector<VerifyCheck> run_verification() {
  using namespace detail;
  const cplx I(0.0, 1.0);
  std::vector<VerifyCheck> out;
  auto guarded = [&out](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      out.push_back({name, "no error", e.what(), 0.0, false});
    }
  };

  guarded("CCR [x,p] = i", [&] {
    out.push_back(scalar_check("CCR [x,p] = i", I,
                               commutator(OperatorPoly::x(1, 0), OperatorPoly::p(1, 0)).constant_part(), 0.0));
  });
  guarded("U matrix", [&] {
    out.push_back(matrix_check("U (K=1)", rows({{0.0, I}, {-I, 0.0}}), build_U(1), 0.0));
    out.push_back(matrix_check("U (K=2) from commutators", build_U(2), build_U_from_commutators(2), 0.0));
  });
  guarded("1D adjoint matrix", [&] {
    const double b = 0.3;
    out.push_back(matrix_check("1D adjoint matrix, b=0.3", rows({{-2.0 * b * I, 2.0 * I}, {-2.0 * I, 2.0 * b * I}}),
                               adjoint_of(ModelSpec::oned(b)).H, 1e-12));
    const GammaMatrix g(1, rows({{1.0, b}, {b, 1.0}}));
    out.push_back(matrix_check("1D (gamma + gamma^t) U, b=0.3", adjoint_of(ModelSpec::oned(b)).H,
                               gamma_to_adjoint(g).H, 1e-12));
  });
  guarded("2D adjoint matrices", [&] {
    const double a = 2.0, b = 3.0;
    out.push_back(matrix_check("coupled_xy adjoint matrix, a=2 b=3",
                               rows({{0.0, 0.0, 2.0 * I, b * I},
                                     {0.0, 0.0, b * I, 2.0 * a * I},
                                     {-2.0 * I, 0.0, 0.0, 0.0},
                                     {0.0, -2.0 * I, 0.0, 0.0}}),
                               adjoint_of(ModelSpec::coupled_xy(a, b)).H, 1e-12));
    out.push_back(matrix_check("angular adjoint matrix, a=2 b=3",
                               rows({{0.0, -b * I, 2.0 * I, 0.0},
                                     {b * I, 0.0, 0.0, 2.0 * a * I},
                                     {-2.0 * I, 0.0, 0.0, -b * I},
                                     {0.0, -2.0 * I, b * I, 0.0}}),
                               adjoint_of(ModelSpec::angular(a, b)).H, 1e-12));
  });
  guarded("Hermiticity", [&] {
    out.push_back(bool_check("1D Hermitian for real b", true, is_hermitian(instantiate(ModelSpec::oned(0.7)).hamiltonian)));
    out.push_back(bool_check("1D non-Hermitian for b=i", false, is_hermitian(instantiate(ModelSpec::oned(I)).hamiltonian)));
  });
  guarded("U-pseudo-Hermiticity", [&] {
    const auto r = check_structure(adjoint_of(ModelSpec::oned(0.5)), true);
    out.push_back(bool_check("1D b=0.5 (UH)^t = UH", true, r.uh_symmetric));
    out.push_back(bool_check("1D b=0.5 H* = -H", true, *r.entries_antireal));
    out.push_back(bool_check("1D b=0.5 H^dagger = UHU", true, *r.pseudo_hermitian));
  });
  guarded("1D eigenvalues", [&] {
    for (const double b : {0.0, 0.5, 0.9, 2.0}) {
      const auto s = eigen(adjoint_of(ModelSpec::oned(b)));
      const cplx l = 2.0 * std::sqrt(cplx(1.0 - b * b));
      out.push_back({"1D lambda = +-2 sqrt(1-b^2), b=" + fmt(b), "+-" + fmt(l), fmt(s.eigenvalues.back()),
                     1e-10, spectrum_distance(s.eigenvalues, {l, -l}) <= 1e-10});
    }
  });
  guarded("1D exceptional points", [&] {
    for (const double b : {1.0, -1.0}) {
      const auto rep = adjoint_of(ModelSpec::oned(b));
      const auto s = eigen(rep);
      out.push_back({"1D b=" + fmt(b) + " classification", "ExceptionalCandidate", to_string(s.classification), 0.0,
                     s.classification == SpectrumClass::ExceptionalCandidate});
      const auto [alg, geo] = defect_info(rep, 0.0);
      out.push_back({"1D b=" + fmt(b) + " defect (alg, geo)", "(2, 1)",
                     "(" + std::to_string(alg) + ", " + std::to_string(geo) + ")", 0.0, alg == 2 && geo == 1});
      Vector expected(2);
      expected << 1.0 / std::sqrt(2.0), b / std::sqrt(2.0);
      const Vector got = eigenvectors_for(rep, 0.0).col(0);
      const double err = std::min((got - expected).cwiseAbs().maxCoeff(), (got + expected).cwiseAbs().maxCoeff());
      out.push_back({"1D b=" + fmt(b) + " sole eigenvector (1, " + fmt(b) + ")/sqrt2", "0", fmt(err), 1e-8, err <= 1e-8});
    }
    const auto j = jordan_form(adjoint_of(ModelSpec::oned(1.0)));
    out.push_back(matrix_check("1D b=1 Jordan form [[0,1],[0,0]]", rows({{0.0, 1.0}, {0.0, 0.0}}), j.J, 1e-9));
    out.push_back(scalar_check("1D b=1 Jordan residual", 0.0, j.residual, 1e-9));
  });
  guarded("2D charpoly", [&] {
    for (const auto& spec : {ModelSpec::coupled_xy(2.0, 1.0), ModelSpec::coupled_pp(2.0, 1.0),
                             ModelSpec::angular(2.0, 0.5), ModelSpec::coupled_xy(1.5, 0.7 * I)}) {
      const auto xi = closed_form_xi(spec);
      const std::vector<cplx> expected{xi[0] * xi[1], 0.0, -(xi[0] + xi[1]), 0.0, 1.0};
      const auto got = char_poly(adjoint_of(spec));
      double err = 0.0;
      for (std::size_t k = 0; k < 5; ++k) err = std::max(err, std::abs(got[k] - expected[k]) / std::max(1.0, std::abs(expected[k])));
      out.push_back({to_string(spec.kind) + " charpoly l^4 - (xi+ + xi-) l^2 + xi+ xi-", "rel err 0", fmt(err), 1e-9,
                     err <= 1e-9});
    }
  });
  guarded("reality windows", [&] {
    out.push_back(bool_check("coupled_xy a=4 b=3.9 real", true, eigen(adjoint_of(ModelSpec::coupled_xy(4.0, 3.9))).all_real()));
    out.push_back(bool_check("coupled_pp a=2 b=i complex", false, eigen(adjoint_of(ModelSpec::coupled_pp(2.0, I))).all_real()));
    out.push_back(bool_check("coupled_xy a=1 b=i complex", false, eigen(adjoint_of(ModelSpec::coupled_xy(1.0, I))).all_real()));
    out.push_back(bool_check("1D b=2.5i real", true, eigen(adjoint_of(ModelSpec::oned(2.5 * I))).all_real()));
  });
  guarded("ground energy", [&] {
    for (const double b : {0.0, 0.6}) {
      const auto spec = ModelSpec::oned(b);
      const auto L = ladder_system(adjoint_of(spec), instantiate(spec).hamiltonian);
      out.push_back(scalar_check("1D E0 = sqrt(1-b^2), b=" + fmt(b), std::sqrt(1 - b * b), L.E0, 1e-9));
    }
    const auto spec = ModelSpec::coupled_xy(1.0, 0.0);
    const auto L = ladder_system(adjoint_of(spec), instantiate(spec).hamiltonian);
    out.push_back(scalar_check("coupled_xy a=1 b=0 E0", 2.0, L.E0, 1e-9));
  });
  guarded("antiunitary symmetries", [&] {
    const double beta = 0.8;
    {
      const auto rep = adjoint_of(ModelSpec::oned(beta * I));
      const auto pt = find_builtin(1, "PT");
      const auto r = check_symmetry(rep, pt);
      out.push_back(bool_check("1D b=0.8i PT: AH* = HA", true, r.commutes));
      out.push_back(matrix_check("1D PT: AA = I", Matrix::Identity(2, 2), pt.matrix * pt.matrix, 0.0));
      out.push_back(bool_check("1D PT: A^t U A = -U", true, r.u_relation));
    }
    for (const char* label : {"A_x", "A_y"}) {
      for (const auto& spec : {ModelSpec::coupled_xy(2.0, beta * I), ModelSpec::coupled_pp(2.0, beta * I)}) {
        const auto r = check_symmetry(adjoint_of(spec), find_builtin(2, label));
        out.push_back(bool_check(to_string(spec.kind) + " b=0.8i " + label + " symmetry", true, r.commutes && r.u_relation));
      }
    }
    const auto r = check_symmetry(adjoint_of(ModelSpec::angular(2.0, beta * I)), find_builtin(2, "T"));
    out.push_back(bool_check("angular b=0.8i PT symmetry", true, r.commutes && r.u_relation));
  });
  guarded("exceptional point loci", [&] {
    const auto r1 = ep_find({ModelSpec::oned(0.0), SweepAxis::BReal, 0.5, 1.5, 1e-10});
    out.push_back(scalar_check("ep-find 1D in [0.5, 1.5]", 1.0, r1.value, 1e-8));
    const auto r2 = ep_find({ModelSpec::coupled_xy(4.0, 0.0), SweepAxis::BReal, 3.0, 5.0, 1e-10});
    out.push_back(scalar_check("ep-find coupled_xy a=4: b = 2 sqrt(a)", 4.0, r2.value, 1e-8));
    const auto r3 = ep_find({ModelSpec::coupled_pp(2.0, 0.0), SweepAxis::BImag, 0.0, 1.5, 1e-10});
    out.push_back(scalar_check("ep-find coupled_pp a=2: beta = |a-1|/sqrt(a)", 1.0 / std::sqrt(2.0), r3.value, 1e-8));
  });
  guarded("dynamics", [&] {
    const auto rep = adjoint_of(ModelSpec::angular(2.0, 0.5));
    out.push_back(scalar_check("Cayley-Hamilton |P(H) e^{itH}|, t=1", 0.0, ode_residual(rep, 1.0), 1e-9));
    const auto rep1 = adjoint_of(ModelSpec::oned(0.0));
    const Matrix c_t = evolve(rep1, {0.3})[0].coefficients;
    out.push_back(scalar_check("x(t) = cos(2t) x + sin(2t) p: x part", std::cos(0.6), c_t(0, 0), 1e-12));
    out.push_back(scalar_check("x(t) = cos(2t) x + sin(2t) p: p part", std::sin(0.6), c_t(0, 1), 1e-12));
    const auto s = eigen(rep);
    const Matrix e = Propagator(rep).exp_itH(0.9);
    double worst = 0.0;
    for (int j = 0; j < 4; ++j) {
      const Vector c = s.eigenvectors.col(j);
      worst = std::max(worst, (e * c - std::exp(cplx(0, 0.9) * s.eigenvalues[static_cast<std::size_t>(j)]) * c).cwiseAbs().maxCoeff());
    }
    out.push_back(scalar_check("Z_j(t) = e^{i lambda_j t} Z_j", 0.0, worst, 1e-10));
  });
  return out;
}

inline bool print_verification(std::ostream& os, const std::vector<VerifyCheck>& checks) {
  bool ok = true;
  os << std::left << std::setw(58) << "check" << std::setw(26) << "expected" << std::setw(26) << "got"
     << std::setw(10) << "tol" << "result\n";
  for (const auto& c : checks) {
    os << std::left << std::setw(58) << c.name << std::setw(26) << c.expected << std::setw(26) << c.got
       << std::setw(10) << detail::fmt(c.tolerance) << (c.pass ? "PASS" : "FAIL") << '\n';
    ok = ok && c.pass;
  }
  os << (ok ? "all checks passed" : "some checks FAILED") << " (" << checks.size() << " checks)\n";
  return ok;
}

} // namespace quadham

#endif // QUADHAM_VERIFY_HPP
