#ifndef QUADHAM_SPECTRA_HPP
#define QUADHAM_SPECTRA_HPP

// Eigen-analysis of the adjoint matrix: natural frequencies, pairing,
// classification, defects, Jordan chains and ladder operators.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "adjrep.hpp"

namespace quadham {

enum class SpectrumClass { AllReal, Complex, ExceptionalCandidate };

inline std::string to_string(SpectrumClass c) {
  switch (c) {
    case SpectrumClass::AllReal: return "AllReal";
    case SpectrumClass::Complex: return "Complex";
    case SpectrumClass::ExceptionalCandidate: return "ExceptionalCandidate";
  }
  return "?";
}

/// Relative thresholds; multiplied by max(1, spectral radius).
struct SpectrumTolerances {
  double pairing = 1e-8;
  double real = 1e-8;
  double collision = 1e-6;
  double rank = 1e-8;  // relative to the largest singular value
};

struct Defect {
  cplx eigenvalue;
  int algebraic = 0;
  int geometric = 0;
  std::vector<int> members;  // indices into SpectrumReport::eigenvalues
  bool defective() const { return geometric < algebraic; }
};

struct SpectrumReport {
  std::vector<cplx> eigenvalues;             // lambda_1..lambda_2K
  Matrix eigenvectors;                       // column j belongs to lambda_j
  std::vector<double> residuals;             // |H C_j - lambda_j C_j|_inf
  std::vector<std::pair<int, int>> pairs;    // (j, 2K-1-j), 0-based
  SpectrumClass classification = SpectrumClass::AllReal;
  std::vector<cplx> charpoly;                // ascending powers of lambda
  std::vector<Defect> defects;               // one per distinct eigenvalue
  std::vector<int> cluster_of;               // eigenvalue index -> defects index
  double scale = 1.0;
  double max_imag = 0.0;
  double min_gap = 0.0;

  bool all_real(const SpectrumTolerances& t = {}) const { return max_imag < t.real * scale; }
  bool simple(int j) const { return defects[static_cast<std::size_t>(cluster_of[static_cast<std::size_t>(j)])].algebraic == 1; }
  bool any_defective() const {
    return std::any_of(defects.begin(), defects.end(), [](const Defect& d) { return d.defective(); });
  }
};

namespace detail {

using ldcplx = std::complex<long double>;
using LdMatrix = Eigen::Matrix<ldcplx, Eigen::Dynamic, Eigen::Dynamic>;

/// Faddeev-LeVerrier in extended precision: coefficients of det(lambda I - H),
/// ascending, c[n] = 1.
inline std::vector<ldcplx> faddeev_leverrier(const Matrix& h) {
  const Eigen::Index n = h.rows();
  const LdMatrix a = h.cast<ldcplx>();
  std::vector<ldcplx> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1.0L;
  LdMatrix m = LdMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(n - k + 1)] * LdMatrix::Identity(n, n);
    c[static_cast<std::size_t>(n - k)] = -(a * m).trace() / static_cast<long double>(k);
  }
  return c;
}

inline ldcplx horner(const std::vector<ldcplx>& c, ldcplx z) {
  ldcplx r = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
  return r;
}

/// Roots of a monic polynomial (ascending coefficients).
inline std::vector<ldcplx> monic_roots(const std::vector<ldcplx>& c) {
  const std::size_t deg = c.size() - 1;
  std::vector<ldcplx> roots;
  if (deg == 0) return roots;
  if (deg == 1) return {-c[0]};
  if (deg == 2) {
    const ldcplx b = c[1], q0 = c[0];
    const ldcplx s = std::sqrt(b * b - 4.0L * q0);
    const ldcplx q = (std::real(std::conj(b) * s) >= 0.0L) ? -(b + s) / 2.0L : -(b - s) / 2.0L;
    if (q == ldcplx(0.0L)) return {0.0L, 0.0L};
    return {q, q0 / q};
  }
  LdMatrix companion = LdMatrix::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0L;
  for (std::size_t i = 0; i < deg; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -c[i];
  Eigen::ComplexEigenSolver<LdMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("companion eigenvalue iteration failed (degree " +
                             std::to_string(deg) + ")");
  std::vector<ldcplx> dc(deg);
  for (std::size_t i = 1; i <= deg; ++i) dc[i - 1] = static_cast<long double>(i) * c[i];
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    ldcplx z = solver.eigenvalues()(i);
    // Newton polish, kept only while it lowers |p(z)|
    for (int it = 0; it < 8; ++it) {
      const ldcplx pz = horner(c, z), dpz = horner(dc, z);
      if (dpz == ldcplx(0.0L)) break;
      const ldcplx next = z - pz / dpz;
      if (std::abs(horner(c, next)) >= std::abs(pz)) break;
      z = next;
    }
    roots.push_back(z);
  }
  return roots;
}

/// Order-preserving key for sorting eigenvalues: real part quantized to the
/// pairing tolerance, then imaginary part. Negation reverses the order exactly.
inline bool eigen_less(cplx a, cplx b, double quantum) {
  const long long ka = std::llround(a.real() / quantum), kb = std::llround(b.real() / quantum);
  if (ka != kb) return ka < kb;
  if (a.imag() != b.imag()) return a.imag() < b.imag();
  return a.real() < b.real();
}

} // namespace detail

/// Coefficients of P(lambda) = det(H - lambda I), ascending powers. For even
/// dimension this is monic.
inline std::vector<cplx> char_poly(const AdjointRep& rep) {
  const auto c = detail::faddeev_leverrier(rep.H);
  std::vector<cplx> out(c.size());
  const long double sign = (rep.H.rows() % 2 == 0) ? 1.0L : -1.0L;
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = cplx(sign * c[i]);
  return out;
}

/// Evaluate polynomial (ascending coefficients) at a matrix argument.
inline Matrix poly_of_matrix(const std::vector<cplx>& c, const Matrix& h) {
  const Eigen::Index n = h.rows();
  Matrix r = Matrix::Zero(n, n);
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * h + *it * Matrix::Identity(n, n);
  return r;
}

/// Coefficients of prod_j (lambda - root_j), ascending.
inline std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

namespace detail {

/// Eigenvalues of the adjoint matrix. P(lambda) is even, so its roots are
/// +-sqrt(mu) with mu the roots of the degree-K polynomial in lambda^2; this
/// keeps the +-lambda pairing exact and returns coalesced roots at
/// exceptional points without the sqrt(eps) splitting of a Schur iteration.
inline std::vector<cplx> paired_eigenvalues(const Matrix& h) {
  const auto c = faddeev_leverrier(h);
  const std::size_t n = c.size() - 1;
  long double biggest = 1.0L, odd = 0.0L;
  for (std::size_t i = 0; i <= n; ++i) {
    biggest = std::max(biggest, std::abs(c[i]));
    if (i % 2 == 1) odd = std::max(odd, std::abs(c[i]));
  }
  std::vector<cplx> out;
  if (n % 2 == 0 && odd <= 1e-10L * biggest) {
    std::vector<ldcplx> q;
    for (std::size_t i = 0; i <= n; i += 2) q.push_back(c[i]);
    for (const ldcplx mu : monic_roots(q)) {
      const cplx r(std::sqrt(mu));
      out.push_back(-r);
      out.push_back(r);
    }
    return out;
  }
  Eigen::ComplexEigenSolver<Matrix> solver(h, false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("Schur iteration failed on a " + std::to_string(h.rows()) + "x" +
                             std::to_string(h.cols()) + " matrix");
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

} // namespace detail

/// Full spectral report. `tol` bounds the eigenpair residual relative to
/// max(1, |H|_inf); classification thresholds come from `t`.
inline SpectrumReport eigen(const AdjointRep& rep, double tol = 1e-10,
                            const SpectrumTolerances& t = {}) {
  const Matrix& h = rep.H;
  const Eigen::Index n = h.rows();
  SpectrumReport s;
  s.charpoly = char_poly(rep);
  s.eigenvalues = detail::paired_eigenvalues(h);

  double radius = 0.0;
  for (const cplx l : s.eigenvalues) radius = std::max(radius, std::abs(l));
  s.scale = std::max(1.0, radius);
  const double quantum = t.pairing * s.scale;
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(),
            [quantum](cplx a, cplx b) { return detail::eigen_less(a, b, quantum); });

  const int dim = static_cast<int>(n);
  for (int j = 0; j < dim / 2; ++j) s.pairs.emplace_back(j, dim - 1 - j);

  s.max_imag = 0.0;
  for (const cplx l : s.eigenvalues) s.max_imag = std::max(s.max_imag, std::abs(l.imag()));
  s.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      s.min_gap = std::min(s.min_gap, std::abs(s.eigenvalues[static_cast<std::size_t>(i)] -
                                               s.eigenvalues[static_cast<std::size_t>(j)]));

  if (s.min_gap < t.collision * s.scale)
    s.classification = SpectrumClass::ExceptionalCandidate;
  else if (s.max_imag < t.real * s.scale)
    s.classification = SpectrumClass::AllReal;
  else
    s.classification = SpectrumClass::Complex;

  // clusters of coinciding eigenvalues (transitive closure)
  std::vector<int> parent(static_cast<std::size_t>(dim));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (std::abs(s.eigenvalues[static_cast<std::size_t>(i)] - s.eigenvalues[static_cast<std::size_t>(j)]) <
          t.collision * s.scale)
        parent[static_cast<std::size_t>(find(j))] = find(i);

  s.cluster_of.assign(static_cast<std::size_t>(dim), -1);
  s.eigenvectors = Matrix::Zero(n, n);
  for (int i = 0; i < dim; ++i) {
    if (s.cluster_of[static_cast<std::size_t>(i)] >= 0) continue;
    Defect d;
    for (int j = i; j < dim; ++j)
      if (find(j) == find(i)) d.members.push_back(j);
    cplx centre = 0.0;
    for (const int j : d.members) centre += s.eigenvalues[static_cast<std::size_t>(j)];
    centre /= static_cast<double>(d.members.size());
    d.eigenvalue = centre;
    d.algebraic = static_cast<int>(d.members.size());

    const auto dec = svd(h - centre * Matrix::Identity(n, n));
    const double smax = dec.singular(0);
    int nullity = 0;
    for (Eigen::Index k = 0; k < dec.singular.size(); ++k)
      if (dec.singular(k) <= t.rank * smax || smax == 0.0) ++nullity;
    d.geometric = std::clamp(nullity, 1, d.algebraic);

    for (std::size_t m = 0; m < d.members.size(); ++m) {
      const auto col = n - 1 - static_cast<Eigen::Index>(std::min<int>(static_cast<int>(m), d.geometric - 1));
      s.eigenvectors.col(d.members[m]) = normalize_phase(dec.right.col(col));
    }
    const int id = static_cast<int>(s.defects.size());
    for (const int j : d.members) s.cluster_of[static_cast<std::size_t>(j)] = id;
    s.defects.push_back(std::move(d));
  }

  const double bound = tol * std::max(1.0, norm_inf(h));
  for (int j = 0; j < dim; ++j) {
    const Vector c = s.eigenvectors.col(j);
    const double r = (h * c - s.eigenvalues[static_cast<std::size_t>(j)] * c).cwiseAbs().maxCoeff();
    s.residuals.push_back(r);
    if (s.simple(j) && r > bound)
      throw ConvergenceFailure("eigenpair " + std::to_string(j + 1) + " residual " +
                               std::to_string(r) + " exceeds " + std::to_string(bound));
  }
  return s;
}

/// (algebraic, geometric) multiplicity of lambda.
inline std::pair<int, int> defect_info(const AdjointRep& rep, cplx lambda, double tol = 1e-6,
                                       const SpectrumTolerances& t = {}) {
  const auto s = eigen(rep, 1e-8, t);
  const double radius = tol * s.scale;
  int algebraic = 0;
  for (const cplx l : s.eigenvalues)
    if (std::abs(l - lambda) < std::max(radius, t.collision * s.scale)) ++algebraic;
  if (algebraic == 0) throw InvalidParam("value is not an eigenvalue within tolerance");
  const Eigen::Index n = rep.H.rows();
  const int rank = numerical_rank(rep.H - lambda * Matrix::Identity(n, n), t.rank);
  const int geometric = std::clamp(static_cast<int>(n) - rank, 1, algebraic);
  return {algebraic, geometric};
}

/// Null vectors of H - lambda I (unit norm, phase-fixed), one per column.
inline Matrix eigenvectors_for(const AdjointRep& rep, cplx lambda, const SpectrumTolerances& t = {}) {
  const Eigen::Index n = rep.H.rows();
  const auto dec = svd(rep.H - lambda * Matrix::Identity(n, n));
  const double smax = dec.singular(0);
  int nullity = 0;
  for (Eigen::Index k = 0; k < dec.singular.size(); ++k)
    if (dec.singular(k) <= t.rank * smax || smax == 0.0) ++nullity;
  nullity = std::max(nullity, 1);
  Matrix out(n, nullity);
  for (int k = 0; k < nullity; ++k) out.col(k) = normalize_phase(dec.right.col(n - 1 - k));
  return out;
}

struct JordanResult {
  Matrix P;
  Matrix J;
  double residual = 0.0;      // max |P^-1 H P - J|
  double chain_residual = 0.0;  // worst |(H - lambda I) v_{k+1} - v_k|
  std::vector<int> block_sizes;
};

/// Jordan form through explicit chains. Each defective eigenvalue must have a
/// single chain (geometric multiplicity 1); generalized vectors come from the
/// minimum-norm least-squares solution of (H - lambda I) v_{k+1} = v_k.
inline JordanResult jordan_form(const AdjointRep& rep, double tol = 1e-9,
                                const SpectrumTolerances& t = {}) {
  const auto s = eigen(rep, 1e-8, t);
  if (!s.any_defective()) throw NotDefective("matrix is diagonalizable within tolerance");
  const Eigen::Index n = rep.H.rows();
  JordanResult r;
  r.P = Matrix::Zero(n, n);
  r.J = Matrix::Zero(n, n);
  Eigen::Index col = 0;
  for (const Defect& d : s.defects) {
    const Matrix shifted = rep.H - d.eigenvalue * Matrix::Identity(n, n);
    if (!d.defective()) {
      const Matrix vecs = eigenvectors_for(rep, d.eigenvalue, t);
      if (vecs.cols() < d.algebraic)
        throw IllConditioned("eigenspace dimension below multiplicity");
      for (int k = 0; k < d.algebraic; ++k) {
        r.P.col(col) = vecs.col(k);
        r.J(col, col) = d.eigenvalue;
        r.block_sizes.push_back(1);
        ++col;
      }
      continue;
    }
    if (d.geometric != 1)
      throw IllConditioned("several Jordan chains for one eigenvalue are not supported");
    Vector v = eigenvectors_for(rep, d.eigenvalue, t).col(0);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(shifted);
    cod.setThreshold(t.rank);
    const Eigen::Index start = col;
    r.P.col(col) = v;
    r.J(col, col) = d.eigenvalue;
    ++col;
    for (int k = 1; k < d.algebraic; ++k) {
      Vector next = cod.solve(v);
      r.chain_residual = std::max(r.chain_residual, (shifted * next - v).cwiseAbs().maxCoeff());
      r.P.col(col) = next;
      r.J(col, col) = d.eigenvalue;
      r.J(col - 1, col) = 1.0;
      v = next;
      ++col;
    }
    r.block_sizes.push_back(static_cast<int>(col - start));
  }
  if (r.chain_residual > tol)
    throw IllConditioned("Jordan chain residual " + std::to_string(r.chain_residual));
  const Eigen::FullPivLU<Matrix> lu(r.P);
  if (!lu.isInvertible()) throw IllConditioned("Jordan basis is singular");
  r.residual = max_abs(lu.solve(rep.H * r.P) - r.J);
  return r;
}

/// Ladder operators Z_j with [H, Z_j] = lambda_j Z_j, the scalars
/// sigma_j = [Z_j, Z_{2K-j+1}] and the ground energy E0 from
/// H = -sum_j (lambda_j / sigma_j) Z_{2K-j+1} Z_j + E0.
struct LadderSystem {
  OperatorPoly hamiltonian;
  std::vector<cplx> lambda;   // ascending, lambda_j = -lambda_{2K-j+1}
  Matrix coefficients;        // column j = c_j
  std::vector<OperatorPoly> Z;
  std::vector<cplx> sigma;    // K entries
  cplx E0;
  double eigen_residual = 0.0;     // worst |[H, Z_j] - lambda_j Z_j|
  double identity_residual = 0.0;  // non-constant part of H + sum(...) - E0
};

inline constexpr double kLadderTol = 1e-10;

inline LadderSystem ladder_system(const AdjointRep& rep, const OperatorPoly& h,
                                  const SpectrumTolerances& t = {}) {
  const auto s = eigen(rep, 1e-10, t);
  if (!s.all_real(t)) throw NotApplicable("ladder construction needs a real spectrum");
  if (s.any_defective()) throw NotApplicable("ladder construction needs a diagonalizable matrix");
  const int K = rep.K;
  const int dim = 2 * K;
  for (int j = 0; j < K; ++j)
    if (std::abs(s.eigenvalues[static_cast<std::size_t>(j)]) < t.collision * s.scale)
      throw NotApplicable("zero natural frequency has no ladder partner");

  LadderSystem L;
  L.hamiltonian = h;
  L.coefficients = s.eigenvectors;
  for (const cplx l : s.eigenvalues) L.lambda.emplace_back(l.real(), 0.0);

  // Within a degenerate negative cluster, mix the partner vectors so that
  // [Z_j, Z_{2K-j+1}] is diagonal in j. Simple clusters are unaffected.
  const Matrix& U = rep.U;
  std::vector<bool> done(static_cast<std::size_t>(dim), false);
  for (int j = 0; j < K; ++j) {
    if (done[static_cast<std::size_t>(j)]) continue;
    const auto& members = s.defects[static_cast<std::size_t>(s.cluster_of[static_cast<std::size_t>(j)])].members;
    std::vector<int> neg, pos;
    for (const int m : members)
      if (m < K) {
        neg.push_back(m);
        pos.push_back(dim - 1 - m);
        done[static_cast<std::size_t>(m)] = true;
      }
    const auto m = static_cast<Eigen::Index>(neg.size());
    Matrix Nm(dim, m), Pm(dim, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      Nm.col(k) = L.coefficients.col(neg[static_cast<std::size_t>(k)]);
      Pm.col(k) = L.coefficients.col(pos[static_cast<std::size_t>(k)]);
    }
    const Matrix gram = Nm.transpose() * U * Pm;
    const Eigen::FullPivLU<Matrix> lu(gram);
    if (!lu.isInvertible()) throw DegenerateSigma("ladder partners are not canonically paired");
    Matrix mixed = Pm * lu.inverse();
    for (Eigen::Index k = 0; k < m; ++k)
      L.coefficients.col(pos[static_cast<std::size_t>(k)]) = normalize_phase(mixed.col(k));
  }

  for (int j = 0; j < dim; ++j) {
    L.Z.push_back(OperatorPoly::linear(K, L.coefficients.col(j)));
    const auto defect = commutator(h, L.Z.back()) - L.Z.back() * L.lambda[static_cast<std::size_t>(j)];
    L.eigen_residual = std::max(L.eigen_residual, defect.norm_inf());
  }
  if (L.eigen_residual > kLadderTol * s.scale)
    throw ConvergenceFailure("[H, Z] = lambda Z violated by " + std::to_string(L.eigen_residual));

  OperatorPoly acc = h;
  for (int j = 0; j < K; ++j) {
    const auto& zj = L.Z[static_cast<std::size_t>(j)];
    const auto& zp = L.Z[static_cast<std::size_t>(dim - 1 - j)];
    const cplx sigma = commutator(zj, zp).constant_part();
    if (std::abs(sigma) < kLadderTol) throw DegenerateSigma("sigma_" + std::to_string(j + 1) + " vanishes");
    L.sigma.push_back(sigma);
    acc += multiply(zp, zj) * (L.lambda[static_cast<std::size_t>(j)] / sigma);
  }
  L.E0 = acc.constant_part();
  L.identity_residual = acc.without_constant().norm_inf();
  if (L.identity_residual > kLadderTol * s.scale)
    throw NonClosure("H + sum (lambda/sigma) Z'Z is not a constant: residual " +
                     std::to_string(L.identity_residual));
  return L;
}

/// [H, Z_j^dagger] = -lambda_j* Z_j^dagger for every j (Hermitian H only).
inline bool hermitian_ladder_check(const LadderSystem& L, double tol = 1e-10) {
  for (std::size_t j = 0; j < L.Z.size(); ++j) {
    const auto zd = adjoint(L.Z[j]);
    const auto lhs = commutator(L.hamiltonian, zd);
    if (!approx_equal(lhs, zd * (-std::conj(L.lambda[j])), tol)) return false;
  }
  return true;
}

} // namespace quadham

#endif // QUADHAM_SPECTRA_HPP
