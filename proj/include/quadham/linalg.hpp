#ifndef QUADHAM_LINALG_HPP
#define QUADHAM_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "errors.hpp"

namespace quadham {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Induced infinity norm (max row sum).
inline double norm_inf(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Singular values (descending) and right singular vectors of m.
struct SvdResult {
  Eigen::VectorXd singular;
  Matrix right;
};

inline SvdResult svd(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.singularValues(), solver.matrixV()};
}

/// Number of singular values above rel_threshold * sigma_max.
inline int numerical_rank(const Matrix& m, double rel_threshold = 1e-8) {
  const auto s = svd(m).singular;
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_threshold * s(0)) ++r;
  return r;
}

/// Unit norm, with the first component of (numerically) largest magnitude
/// rotated onto the positive real axis.
inline Vector normalize_phase(Vector v) {
  const double n = v.norm();
  if (n == 0.0) return v;
  v /= n;
  const double big = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= big * (1.0 - 1e-9)) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      break;
    }
  }
  return v;
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
/// The series is summed until the next term falls below tol relative to the
/// partial sum. Templated so callers can ask for extended precision.
template <class M>
M expm_taylor(const M& a, typename M::RealScalar tol) {
  using Real = typename M::RealScalar;
  const Eigen::Index n = a.rows();
  const Real norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > Real(0.5)) squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(norm / Real(0.5)))));
  const M scaled = a / std::ldexp(Real(1), squarings);

  M sum = M::Identity(n, n);
  M term = M::Identity(n, n);
  bool converged = false;
  for (int k = 1; k <= 60; ++k) {
    term = (term * scaled / static_cast<Real>(k)).eval();
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= tol * sum.cwiseAbs().maxCoeff()) {
      converged = true;
      break;
    }
  }
  if (!converged) throw ConvergenceFailure("Taylor series of the matrix exponential did not converge");
  for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
  return sum;
}

inline Matrix expm_series(const Matrix& a, double tol = 1e-16) { return expm_taylor(a, tol); }

} // namespace quadham

#endif // QUADHAM_LINALG_HPP
