#ifndef QUADHAM_ADJREP_HPP
#define QUADHAM_ADJREP_HPP

// Adjoint (regular) matrix representation of a quadratic Hamiltonian on the
// operator basis O = {x_1..x_K, p_1..p_K}:  [H, O_i] = sum_j H_ji O_j.

#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "opcore.hpp"

namespace quadham {

/// Coefficients gamma_ij of H = sum_ij gamma_ij O_i O_j.
class GammaMatrix {
public:
  GammaMatrix(int K, Matrix entries) : K_(K), entries_(std::move(entries)) {
    if (K < 1) throw DimensionMismatch("K must be positive");
    if (entries_.rows() != 2 * K || entries_.cols() != 2 * K)
      throw DimensionMismatch("gamma must be " + std::to_string(2 * K) + "x" +
                              std::to_string(2 * K) + ", got " + std::to_string(entries_.rows()) +
                              "x" + std::to_string(entries_.cols()));
  }

  int modes() const { return K_; }
  const Matrix& entries() const { return entries_; }

private:
  int K_;
  Matrix entries_;
};

struct AdjointRep {
  int K = 1;
  Matrix H;                         // H_ij
  Matrix U;                         // [O_i, O_j] = U_ij
  std::vector<OperatorPoly> basis;  // O_1..O_2K
  cplx constant{};                  // scalar part of the Hamiltonian

  int dim() const { return 2 * K; }
};

inline std::vector<OperatorPoly> canonical_basis(int K) {
  std::vector<OperatorPoly> basis;
  for (int i = 0; i < 2 * K; ++i) basis.push_back(OperatorPoly::basis(K, i));
  return basis;
}

/// U = i [[0, I], [-I, 0]].
inline Matrix build_U(int K) {
  if (K < 1) throw DimensionMismatch("K must be positive");
  Matrix U = Matrix::Zero(2 * K, 2 * K);
  for (int m = 0; m < K; ++m) {
    U(m, K + m) = cplx(0, 1);
    U(K + m, m) = cplx(0, -1);
  }
  return U;
}

/// U recomputed entry by entry from the scalar parts of [O_i, O_j].
inline Matrix build_U_from_commutators(int K) {
  const auto basis = canonical_basis(K);
  Matrix U(2 * K, 2 * K);
  for (int i = 0; i < 2 * K; ++i)
    for (int j = 0; j < 2 * K; ++j) U(i, j) = commutator(basis[i], basis[j]).constant_part();
  return U;
}

/// H = sum_ij gamma_ij O_i O_j as an operator polynomial.
inline OperatorPoly hamiltonian_from_gamma(const GammaMatrix& gamma, cplx constant = 0.0) {
  const int K = gamma.modes();
  const auto basis = canonical_basis(K);
  OperatorPoly h = OperatorPoly::constant(K, constant);
  for (int i = 0; i < 2 * K; ++i)
    for (int j = 0; j < 2 * K; ++j)
      if (gamma.entries()(i, j) != cplx{})
        h += multiply(basis[i], basis[j]) * gamma.entries()(i, j);
  return h;
}

inline constexpr double kClosureTol = 1e-12;

/// Column i holds the expansion of [H, O_i] in the basis. Degree-1 terms are
/// rejected; a constant is kept aside in AdjointRep::constant.
inline AdjointRep build_adjoint(const OperatorPoly& h) {
  const int K = h.modes();
  if (h.has_degree(1))
    throw InhomogeneousHamiltonian("linear terms take [H, O_i] outside span{x, p}");

  AdjointRep rep;
  rep.K = K;
  rep.basis = canonical_basis(K);
  rep.U = build_U(K);
  rep.constant = h.constant_part();
  rep.H = Matrix::Zero(2 * K, 2 * K);
  for (int i = 0; i < 2 * K; ++i) {
    OperatorPoly residual = commutator(h, rep.basis[i]);
    for (int j = 0; j < 2 * K; ++j) {
      const cplx c = residual.linear_coefficient(j);
      rep.H(j, i) = c;
      residual -= rep.basis[j] * c;
    }
    if (residual.norm_inf() > kClosureTol)
      throw NonClosure("[H, O_" + std::to_string(i + 1) + "] leaves the basis span: " +
                       residual.to_string());
  }
  return rep;
}

/// H = (gamma + gamma^t) U.
inline AdjointRep gamma_to_adjoint(const GammaMatrix& gamma, cplx constant = 0.0) {
  AdjointRep rep;
  rep.K = gamma.modes();
  rep.basis = canonical_basis(rep.K);
  rep.U = build_U(rep.K);
  // p_m x_m = x_m p_m + U(K+m, m) leaves a scalar behind when normal ordered
  rep.constant = constant;
  for (int m = 0; m < rep.K; ++m) rep.constant += gamma.entries()(rep.K + m, m) * rep.U(rep.K + m, m);
  rep.H = (gamma.entries() + gamma.entries().transpose()) * rep.U;
  return rep;
}

struct StructureReport {
  bool uh_symmetric = false;
  double uh_residual = 0.0;
  std::optional<bool> entries_antireal;  // only for Hermitian input
  std::optional<bool> pseudo_hermitian;  // only for Hermitian input
  double antireal_residual = 0.0;
  double pseudo_residual = 0.0;
};

/// (UH)^t = UH always; for Hermitian H also H_ij* = -H_ij and H^dagger = U H U.
inline StructureReport check_structure(const AdjointRep& rep, bool hermitian_input,
                                       double tol = 1e-12) {
  StructureReport r;
  const Matrix uh = rep.U * rep.H;
  r.uh_residual = max_abs(uh.transpose() - uh);
  r.uh_symmetric = r.uh_residual < tol;
  if (hermitian_input) {
    r.antireal_residual = max_abs(rep.H.conjugate() + rep.H);
    r.entries_antireal = r.antireal_residual < tol;
    r.pseudo_residual = max_abs(rep.H.adjoint() - rep.U * rep.H * rep.U);
    r.pseudo_hermitian = r.pseudo_residual < tol;
  }
  return r;
}

} // namespace quadham

#endif // QUADHAM_ADJREP_HPP
