#ifndef QUADHAM_SYMMETRY_HPP
#define QUADHAM_SYMMETRY_HPP

// Unitary and antiunitary symmetries acting on the operator basis.
//
//   unitary      S O_i S^dagger = sum_j s_ji O_j     =>  S H = H S,   S^t U S = U
//   antiunitary  A O_i A^-1     = sum_j a_ji O_j     =>  A H* = H A,  A^t U A = -U
//
// An antiunitary symmetry is stored as its matrix with the complex
// conjugation implicit in the kind: it acts on coefficient vectors as
// v -> A v*. The matrices A and -A describe the same operator up to a phase;
// the catalog keeps one representative.

#include <optional>
#include <string>
#include <vector>

#include "spectra.hpp"

namespace quadham {

enum class SymmetryKind { Unitary, Antiunitary };

inline std::string to_string(SymmetryKind k) {
  return k == SymmetryKind::Unitary ? "unitary" : "antiunitary";
}

struct SymmetrySpec {
  SymmetryKind kind = SymmetryKind::Unitary;
  Matrix matrix;
  std::string label;
};

struct SymmetryCheckReport {
  std::string label;
  SymmetryKind kind = SymmetryKind::Unitary;
  bool commutes = false;
  double commute_residual = 0.0;
  bool u_relation = false;
  double u_residual = 0.0;
  // antiunitary only: eigenvalue multiset closed under conjugation
  std::optional<bool> conjugation_closed;
  double conjugation_residual = 0.0;
};

namespace detail {

inline void require_dimension(const AdjointRep& rep, const SymmetrySpec& sym) {
  if (sym.matrix.rows() != rep.dim() || sym.matrix.cols() != rep.dim())
    throw DimensionMismatch("symmetry '" + sym.label + "' is " + std::to_string(sym.matrix.rows()) +
                            "x" + std::to_string(sym.matrix.cols()) + ", basis has " +
                            std::to_string(rep.dim()) + " operators");
}

/// Largest distance from an element of `a` to its closest partner in `b`
/// under a greedy one-to-one assignment.
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  double worst = 0.0;
  for (const cplx x : a) {
    auto best = b.begin();
    for (auto it = b.begin(); it != b.end(); ++it)
      if (std::abs(*it - x) < std::abs(*best - x)) best = it;
    worst = std::max(worst, std::abs(*best - x));
    b.erase(best);
  }
  return worst;
}

} // namespace detail

inline double u_relation_residual(const AdjointRep& rep, const SymmetrySpec& sym) {
  detail::require_dimension(rep, sym);
  const Matrix lhs = sym.matrix.transpose() * rep.U * sym.matrix;
  return sym.kind == SymmetryKind::Unitary ? max_abs(lhs - rep.U) : max_abs(lhs + rep.U);
}

inline SymmetryCheckReport check_symmetry(const AdjointRep& rep, const SymmetrySpec& sym,
                                          double tol = 1e-12,
                                          const std::optional<SpectrumReport>& spectrum = std::nullopt) {
  detail::require_dimension(rep, sym);
  SymmetryCheckReport r;
  r.label = sym.label;
  r.kind = sym.kind;
  const Matrix& m = sym.matrix;
  const Matrix& h = rep.H;
  r.commute_residual = sym.kind == SymmetryKind::Unitary ? max_abs(m * h - h * m)
                                                         : max_abs(m * h.conjugate() - h * m);
  r.commutes = r.commute_residual < tol;
  r.u_residual = u_relation_residual(rep, sym);
  r.u_relation = r.u_residual < tol;
  if (sym.kind == SymmetryKind::Antiunitary) {
    const SpectrumReport s = spectrum ? *spectrum : eigen(rep);
    std::vector<cplx> conj;
    for (const cplx l : s.eigenvalues) conj.push_back(std::conj(l));
    r.conjugation_residual = detail::multiset_distance(s.eigenvalues, conj);
    r.conjugation_closed = r.conjugation_residual < 1e-9 * s.scale;
  }
  return r;
}

namespace detail {

inline SymmetrySpec diagonal_symmetry(SymmetryKind kind, std::vector<double> diag, std::string label) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return {kind, m, std::move(label)};
}

} // namespace detail

/// Parities, time reversal and their composites for K = 1 (x, p) and
/// K = 2 (x, y, p_x, p_y).
inline std::vector<SymmetrySpec> builtin_symmetries(int K) {
  using detail::diagonal_symmetry;
  constexpr auto U = SymmetryKind::Unitary;
  constexpr auto A = SymmetryKind::Antiunitary;
  std::vector<SymmetrySpec> out;
  if (K == 1) {
    out.push_back(diagonal_symmetry(U, {-1, -1}, "P"));
    out.push_back(diagonal_symmetry(A, {1, -1}, "T"));
    out.push_back(diagonal_symmetry(A, {-1, 1}, "PT"));
  } else if (K == 2) {
    out.push_back(diagonal_symmetry(U, {-1, -1, -1, -1}, "P"));
    out.push_back(diagonal_symmetry(U, {-1, 1, -1, 1}, "S_x"));
    out.push_back(diagonal_symmetry(U, {1, -1, 1, -1}, "S_y"));
    out.push_back(diagonal_symmetry(A, {1, 1, -1, -1}, "T"));
    out.push_back(diagonal_symmetry(A, {-1, -1, 1, 1}, "PT"));
    out.push_back(diagonal_symmetry(A, {-1, 1, 1, -1}, "A_x"));
    out.push_back(diagonal_symmetry(A, {1, -1, -1, 1}, "A_y"));
  } else {
    throw UnsupportedDimension("builtin symmetry catalog covers K = 1 and K = 2 only");
  }
  const Matrix u = build_U(K);
  for (const auto& s : out) {
    const Matrix lhs = s.matrix.transpose() * u * s.matrix;
    const double res = s.kind == U ? max_abs(lhs - u) : max_abs(lhs + u);
    if (res != 0.0) throw Error("catalog symmetry " + s.label + " violates its U relation");
  }
  return out;
}

inline SymmetrySpec find_builtin(int K, const std::string& label) {
  for (auto& s : builtin_symmetries(K))
    if (s.label == label) return s;
  throw InvalidParam("no builtin symmetry named '" + label + "' for K = " + std::to_string(K));
}

enum class Exactness { Exact, Broken, SkippedDegenerate };

inline std::string to_string(Exactness e) {
  switch (e) {
    case Exactness::Exact: return "exact";
    case Exactness::Broken: return "broken";
    case Exactness::SkippedDegenerate: return "skipped_degenerate";
  }
  return "?";
}

struct ExactnessVerdict {
  Exactness verdict = Exactness::Broken;
  cplx ratio;               // b in A C* = b C
  double mismatch = 0.0;    // |A C* - b C|_inf
  bool real_eigenvalue = false;
};

/// Per eigenvector: the antiunitary symmetry is exact on C iff A C* = b C.
/// Clustered eigenvalues are skipped since the eigenvector is not unique there.
inline std::vector<ExactnessVerdict> exactness(const AdjointRep& rep, const SymmetrySpec& sym,
                                               const SpectrumReport& spectrum, double tol = 1e-9,
                                               const SpectrumTolerances& t = {}) {
  detail::require_dimension(rep, sym);
  if (sym.kind != SymmetryKind::Antiunitary)
    throw InvalidParam("exactness applies to antiunitary symmetries");
  std::vector<ExactnessVerdict> out;
  for (int j = 0; j < rep.dim(); ++j) {
    ExactnessVerdict v;
    const cplx lambda = spectrum.eigenvalues[static_cast<std::size_t>(j)];
    v.real_eigenvalue = std::abs(lambda.imag()) <= t.real * spectrum.scale;
    if (!spectrum.simple(j)) {
      v.verdict = Exactness::SkippedDegenerate;
      out.push_back(v);
      continue;
    }
    const Vector c = spectrum.eigenvectors.col(j);
    const Vector w = sym.matrix * c.conjugate();
    Eigen::Index k = 0;
    c.cwiseAbs().maxCoeff(&k);
    v.ratio = w(k) / c(k);
    v.mismatch = (w - v.ratio * c).cwiseAbs().maxCoeff();
    v.verdict = v.mismatch < tol ? Exactness::Exact : Exactness::Broken;
    out.push_back(v);
  }
  return out;
}

} // namespace quadham

#endif // QUADHAM_SYMMETRY_HPP
