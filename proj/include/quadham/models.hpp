#ifndef QUADHAM_MODELS_HPP
#define QUADHAM_MODELS_HPP

// Builtin quadratic Hamiltonians with closed-form natural frequencies.
//
//   oned        p^2 + x^2 + b(xp + px)                  lambda = +-2 sqrt(1 - b^2)
//   coupled_xy  px^2 + py^2 + x^2 + a y^2 + b x y       xi = 2[a + 1 +- sqrt(b^2 + (a-1)^2)]
//   coupled_pp  px^2 + py^2 + x^2 + a y^2 + b px py     xi = 2[a + 1 +- sqrt(a b^2 + (a-1)^2)]
//   angular     px^2 + py^2 + x^2 + a y^2 + b(x py - y px)
//                                                       xi = 2a + b^2 + 2 +- 2 sqrt((a-1)^2 + 2(a+1) b^2)
//
// For the 2D models the natural frequencies are +-sqrt(xi_+), +-sqrt(xi_-).
//
// Note on the literature: the angular-momentum frequencies are often quoted
// without the factor 2 in front of the square root. That form disagrees with
// the adjoint matrix, with the product xi_+ xi_- = (b^2 - 4)(b^2 - 4a), and
// with the isotropic limit a = 1 where lambda = +-(2 +- b). The published
// adjoint matrix of coupled_pp is likewise a copy of coupled_xy's; the matrix
// here is always derived from commutators.

#include <optional>
#include <string>
#include <vector>

#include "adjrep.hpp"
#include "spectra.hpp"

namespace quadham {

enum class ModelKind { OneD, CoupledXY, CoupledPP, Angular, Custom };

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::OneD: return "oned";
    case ModelKind::CoupledXY: return "coupled_xy";
    case ModelKind::CoupledPP: return "coupled_pp";
    case ModelKind::Angular: return "angular";
    case ModelKind::Custom: return "custom";
  }
  return "?";
}

inline ModelKind model_kind_from_string(const std::string& s) {
  for (auto k : {ModelKind::OneD, ModelKind::CoupledXY, ModelKind::CoupledPP, ModelKind::Angular,
                 ModelKind::Custom})
    if (to_string(k) == s) return k;
  throw InvalidParam("unknown model '" + s + "'");
}

struct ModelSpec {
  ModelKind kind = ModelKind::OneD;
  int K = 1;
  double a = 1.0;
  cplx b = 0.0;
  std::optional<GammaMatrix> gamma;  // custom only
  double constant = 0.0;

  static ModelSpec oned(cplx b) { return {ModelKind::OneD, 1, 1.0, b, std::nullopt, 0.0}; }
  static ModelSpec coupled_xy(double a, cplx b) { return {ModelKind::CoupledXY, 2, a, b, std::nullopt, 0.0}; }
  static ModelSpec coupled_pp(double a, cplx b) { return {ModelKind::CoupledPP, 2, a, b, std::nullopt, 0.0}; }
  static ModelSpec angular(double a, cplx b) { return {ModelKind::Angular, 2, a, b, std::nullopt, 0.0}; }
  static ModelSpec custom(GammaMatrix g, double constant = 0.0) {
    const int K = g.modes();
    return {ModelKind::Custom, K, 1.0, 0.0, std::move(g), constant};
  }
};

struct ClosedFormSpectrum {
  std::vector<cplx> xi;           // squared frequencies, one per mode
  std::vector<cplx> eigenvalues;  // -+sqrt(xi) for each xi
};

struct ModelInstance {
  OperatorPoly hamiltonian;
  std::optional<ClosedFormSpectrum> expected;
};

inline void validate(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::OneD:
      if (spec.K != 1) throw InvalidParam("oned has K = 1");
      break;
    case ModelKind::CoupledXY:
    case ModelKind::CoupledPP:
    case ModelKind::Angular:
      if (spec.K != 2) throw InvalidParam(to_string(spec.kind) + " has K = 2");
      if (!(spec.a > 0.0)) throw InvalidParam("a must be positive, got " + std::to_string(spec.a));
      break;
    case ModelKind::Custom:
      if (!spec.gamma) throw InvalidParam("custom model needs a gamma matrix");
      if (spec.gamma->modes() != spec.K)
        throw DimensionMismatch("gamma is for K = " + std::to_string(spec.gamma->modes()) +
                                ", model declares K = " + std::to_string(spec.K));
      break;
  }
}

/// xi_+ and xi_- (or 4(1 - b^2) for oned) in complex arithmetic.
inline std::vector<cplx> closed_form_xi(const ModelSpec& spec) {
  const cplx b = spec.b;
  const cplx b2 = b * b;
  const double a = spec.a;
  switch (spec.kind) {
    case ModelKind::OneD: return {4.0 * (1.0 - b2)};
    case ModelKind::CoupledXY: {
      const cplx r = std::sqrt(b2 + (a - 1) * (a - 1));
      return {2.0 * (a + 1 + r), 2.0 * (a + 1 - r)};
    }
    case ModelKind::CoupledPP: {
      const cplx r = std::sqrt(a * b2 + (a - 1) * (a - 1));
      return {2.0 * (a + 1 + r), 2.0 * (a + 1 - r)};
    }
    case ModelKind::Angular: {
      const cplx r = 2.0 * std::sqrt((a - 1) * (a - 1) + 2.0 * (a + 1) * b2);
      return {2 * a + b2 + 2.0 + r, 2 * a + b2 + 2.0 - r};
    }
    case ModelKind::Custom: break;
  }
  throw NotAvailable("no closed form for custom models");
}

inline ClosedFormSpectrum closed_form(const ModelSpec& spec) {
  ClosedFormSpectrum cf;
  cf.xi = closed_form_xi(spec);
  for (const cplx xi : cf.xi) {
    const cplx r = std::sqrt(xi);
    cf.eigenvalues.push_back(-r);
    cf.eigenvalues.push_back(r);
  }
  return cf;
}

inline ModelInstance instantiate(const ModelSpec& spec) {
  validate(spec);
  if (spec.kind == ModelKind::Custom)
    return {hamiltonian_from_gamma(*spec.gamma, spec.constant), std::nullopt};

  const int K = spec.K;
  auto x = [K](int m) { return OperatorPoly::x(K, m); };
  auto p = [K](int m) { return OperatorPoly::p(K, m); };
  OperatorPoly h = OperatorPoly::constant(K, spec.constant);
  if (spec.kind == ModelKind::OneD) {
    h += multiply(p(0), p(0)) + multiply(x(0), x(0)) +
         (multiply(x(0), p(0)) + multiply(p(0), x(0))) * spec.b;
  } else {
    h += multiply(p(0), p(0)) + multiply(p(1), p(1)) + multiply(x(0), x(0)) +
         multiply(x(1), x(1)) * spec.a;
    switch (spec.kind) {
      case ModelKind::CoupledXY: h += multiply(x(0), x(1)) * spec.b; break;
      case ModelKind::CoupledPP: h += multiply(p(0), p(1)) * spec.b; break;
      case ModelKind::Angular: h += (multiply(x(0), p(1)) - multiply(x(1), p(0))) * spec.b; break;
      default: break;
    }
  }
  return {h, closed_form(spec)};
}

inline AdjointRep adjoint_of(const ModelSpec& spec) { return build_adjoint(instantiate(spec).hamiltonian); }

/// A closed-form exceptional-point locus b^2 = value.
struct EpCondition {
  std::string expression;
  cplx b_squared;

  /// Nonnegative parameter value on the given axis ("b_real" or "b_imag")
  /// where the locus lies, if it lies on that axis.
  std::optional<double> on_axis(const std::string& axis) const {
    if (std::abs(b_squared.imag()) > 1e-14) return std::nullopt;
    const double v = b_squared.real();
    if (axis == "b_real" && v >= 0.0) return std::sqrt(v);
    if (axis == "b_imag" && v <= 0.0) return std::sqrt(-v);
    return std::nullopt;
  }
};

inline std::vector<EpCondition> exceptional_points(const ModelSpec& spec) {
  const double a = spec.a;
  const double am1 = (a - 1) * (a - 1);
  switch (spec.kind) {
    case ModelKind::OneD: return {{"b^2 = 1", 1.0}};
    case ModelKind::CoupledXY: return {{"b^2 = 4a", 4 * a}, {"b^2 = -(a-1)^2", -am1}};
    case ModelKind::CoupledPP: return {{"b^2 = 4", 4.0}, {"b^2 = -(a-1)^2/a", -am1 / a}};
    case ModelKind::Angular:
      return {{"b^2 = 4", 4.0}, {"b^2 = 4a", 4 * a}, {"b^2 = -(a-1)^2/(2(a+1))", -am1 / (2 * (a + 1))}};
    case ModelKind::Custom: break;
  }
  throw NotAvailable("exceptional points are only tabulated for builtin models");
}

/// The reality windows as inequalities in b^2. Defined for b^2 real (b real
/// or purely imaginary); otherwise falls back to xi_+- > 0.
inline bool closed_form_real(const ModelSpec& spec) {
  const cplx b2c = spec.b * spec.b;
  const double a = spec.a;
  if (std::abs(b2c.imag()) > 1e-14 || spec.kind == ModelKind::Custom) {
    for (const cplx xi : closed_form_xi(spec))
      if (std::abs(xi.imag()) > 1e-12 || xi.real() <= 0.0) return false;
    return true;
  }
  const double b2 = b2c.real();
  switch (spec.kind) {
    case ModelKind::OneD: return b2 < 1.0;
    case ModelKind::CoupledXY: return -(a - 1) * (a - 1) < b2 && b2 < 4 * a;
    case ModelKind::CoupledPP: return -(a - 1) * (a - 1) / a < b2 && b2 < 4.0;
    case ModelKind::Angular:
      return b2 > -(a - 1) * (a - 1) / (2 * (a + 1)) && 0.0 > (b2 - 4.0) * (4 * a - b2);
    case ModelKind::Custom: break;
  }
  return false;
}

struct RealityCheck {
  bool expected_real = false;
  bool computed_real = false;
  SpectrumClass classification = SpectrumClass::AllReal;
  bool match = false;
};

/// Self-test of the closed-form windows against eigen(). Points classified as
/// ExceptionalCandidate sit on a window edge and count as a match.
inline RealityCheck classify_reality(const ModelSpec& spec) {
  RealityCheck r;
  r.expected_real = closed_form_real(spec);
  const auto s = eigen(adjoint_of(spec));
  r.classification = s.classification;
  r.computed_real = s.all_real();
  r.match = s.classification == SpectrumClass::ExceptionalCandidate || r.expected_real == r.computed_real;
  return r;
}

} // namespace quadham

#endif // QUADHAM_MODELS_HPP
