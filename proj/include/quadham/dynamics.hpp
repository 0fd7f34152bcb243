#ifndef QUADHAM_DYNAMICS_HPP
#define QUADHAM_DYNAMICS_HPP

// Heisenberg evolution of the basis operators. With the row vector
// O(t) = (O_1(t) .. O_2K(t)) the equation of motion reads dO/dt = i O(t) H,
// so O(t) = O e^{itH}. A TrajectorySample stores the coefficient matrix with
// row j holding the expansion of O_j(t) in the static basis, i.e. the
// transpose of e^{itH}.

#include <vector>

#include "spectra.hpp"

namespace quadham {

struct TrajectorySample {
  double t = 0.0;
  Matrix coefficients;
};

class Propagator {
public:
  explicit Propagator(const AdjointRep& rep, const SpectrumTolerances& tol = {})
      : h_(rep.H) {
    const auto s = eigen(rep, 1e-8, tol);
    const bool near_defective = s.min_gap < tol.collision * s.scale;
    if (!near_defective) {
      Eigen::FullPivLU<Matrix> lu(s.eigenvectors);
      if (lu.isInvertible() && lu.rcond() > 1e-10) {
        vectors_ = s.eigenvectors;
        inverse_ = lu.inverse();
        values_ = s.eigenvalues;
        diagonal_ = true;
      }
    }
  }

  /// Uses the eigendecomposition when the spectrum is well separated,
  /// otherwise scaling and squaring.
  bool uses_eigendecomposition() const { return diagonal_; }

  /// e^{itH}
  Matrix exp_itH(double t) const {
    const cplx it(0.0, t);
    if (diagonal_) {
      Vector d(static_cast<Eigen::Index>(values_.size()));
      for (std::size_t j = 0; j < values_.size(); ++j) d(static_cast<Eigen::Index>(j)) = std::exp(it * values_[j]);
      return vectors_ * d.asDiagonal() * inverse_;
    }
    return expm_series(it * h_);
  }

  TrajectorySample sample(double t) const { return {t, exp_itH(t).transpose()}; }

private:
  Matrix h_;
  Matrix vectors_, inverse_;
  std::vector<cplx> values_;
  bool diagonal_ = false;
};

inline std::vector<TrajectorySample> evolve(const AdjointRep& rep, const std::vector<double>& times) {
  const Propagator prop(rep);
  std::vector<TrajectorySample> out;
  out.reserve(times.size());
  for (const double t : times) out.push_back(prop.sample(t));
  return out;
}

/// Cayley-Hamilton residual |P(H) e^{itH}|_inf with P from char_poly.
inline double ode_residual(const AdjointRep& rep, double t) {
  const Matrix ph = poly_of_matrix(char_poly(rep), rep.H);
  return max_abs(ph * Propagator(rep).exp_itH(t));
}

/// Applies P(-i d/dt) to the sampled trajectory with central differences of
/// step h (second order accurate); returns the max-entry residual.
/// The samples and the differences are taken in long double: a 2K-th
/// difference amplifies rounding by ~h^-2K, which would swamp the h^2
/// truncation error at small h in double.
inline double ode_fd_residual(const AdjointRep& rep, double t, double h) {
  using LMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
  using lcplx = std::complex<long double>;
  const auto c = char_poly(rep);
  const int order = static_cast<int>(c.size()) - 1;
  const int half = (order + 1) / 2;
  const LMatrix hl = rep.H.cast<lcplx>();
  std::vector<LMatrix> samples;
  for (int k = -half; k <= half; ++k) {
    const long double tk = static_cast<long double>(t) + static_cast<long double>(k) * static_cast<long double>(h);
    samples.push_back(expm_taylor(LMatrix(lcplx(0.0L, tk) * hl), 1e-19L).transpose());
  }

  // central difference weights for the m-th derivative: repeated application
  // of the 3-point second difference, plus one half-step first difference for
  // odd m.
  const long double hh = h;
  auto derivative = [&](int m) {
    std::vector<long double> w(static_cast<std::size_t>(2 * half + 1), 0.0L);
    w[static_cast<std::size_t>(half)] = 1.0L;
    auto convolve = [&](const std::vector<long double>& stencil, int offset) {
      std::vector<long double> out(w.size(), 0.0L);
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0.0) continue;
        for (std::size_t s = 0; s < stencil.size(); ++s) {
          const auto j = static_cast<long>(i) + static_cast<long>(s) - offset;
          if (j >= 0 && j < static_cast<long>(w.size())) out[static_cast<std::size_t>(j)] += w[i] * stencil[s];
        }
      }
      w = out;
    };
    for (int k = 0; k < m / 2; ++k) convolve({1.0L / (hh * hh), -2.0L / (hh * hh), 1.0L / (hh * hh)}, 1);
    if (m % 2 == 1) convolve({-0.5L / hh, 0.0L, 0.5L / hh}, 1);
    LMatrix d = LMatrix::Zero(samples[0].rows(), samples[0].cols());
    for (std::size_t i = 0; i < w.size(); ++i) d += lcplx(w[i]) * samples[i];
    return d;
  };

  // P(-i d/dt) = sum_k c_k (-i)^k d^k/dt^k, acting on O(t) = O e^{itH}
  LMatrix total = LMatrix::Zero(samples[0].rows(), samples[0].cols());
  lcplx factor = 1.0L;
  for (int k = 0; k <= order; ++k) {
    total += lcplx(c[static_cast<std::size_t>(k)]) * factor * derivative(k);
    factor *= lcplx(0.0L, -1.0L);
  }
  return static_cast<double>(total.cwiseAbs().maxCoeff());
}

} // namespace quadham

#endif // QUADHAM_DYNAMICS_HPP
