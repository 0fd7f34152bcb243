#ifndef QUADHAM_OPCORE_HPP
#define QUADHAM_OPCORE_HPP

// Polynomials in the canonical variables x_1..x_K, p_1..p_K with
// [x_m, p_n] = i delta_mn (hbar = 1). Every polynomial is stored in normal
// order: all coordinates to the left of all momenta.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace quadham {

using cplx = std::complex<double>;

/// Terms below this magnitude are dropped after every arithmetic operation.
inline constexpr double kZeroThreshold = 1e-14;
/// Largest total degree an OperatorPoly may carry.
inline constexpr int kMaxDegree = 4;

/// x_1^{a_1}..x_K^{a_K} p_1^{b_1}..p_K^{b_K}, exponents stored as (a..., b...).
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(int K) : exps_(static_cast<std::size_t>(2 * K), 0) {}
  explicit Monomial(std::vector<std::uint8_t> exps) : exps_(std::move(exps)) {
    assert(exps_.size() % 2 == 0);
  }

  /// The degree-1 monomial O_i of the basis {x_1..x_K, p_1..p_K}.
  static Monomial basis(int K, int i) {
    Monomial m(K);
    m.exps_.at(static_cast<std::size_t>(i)) = 1;
    return m;
  }

  int modes() const { return static_cast<int>(exps_.size() / 2); }
  int x_power(int m) const { return exps_[static_cast<std::size_t>(m)]; }
  int p_power(int m) const { return exps_[static_cast<std::size_t>(modes() + m)]; }
  int exponent(int i) const { return exps_[static_cast<std::size_t>(i)]; }

  int degree() const {
    int d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  /// Coordinate part x^a (momenta stripped) and momentum part p^b.
  Monomial coordinate_part() const {
    Monomial m = *this;
    std::fill(m.exps_.begin() + modes(), m.exps_.end(), 0);
    return m;
  }
  Monomial momentum_part() const {
    Monomial m = *this;
    std::fill(m.exps_.begin(), m.exps_.begin() + modes(), 0);
    return m;
  }

  const std::vector<std::uint8_t>& exponents() const { return exps_; }

  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    // within a degree, x_1 > x_2 > ... > p_K so that x precedes p when printed
    return a.exps_ > b.exps_;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  std::string to_string() const {
    std::string out;
    const int K = modes();
    auto name = [K](bool momentum, int m) {
      std::string s = momentum ? "p" : "x";
      if (K > 1) s += std::to_string(m + 1);
      return s;
    };
    for (int i = 0; i < 2 * K; ++i) {
      const int e = exps_[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      if (!out.empty()) out += "*";
      out += name(i >= K, i % K);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
  }

private:
  std::vector<std::uint8_t> exps_;
};

namespace detail {

inline cplx minus_i_pow(int k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

/// Normal-ordered expansion of the operator product lhs*rhs. Modes factorize;
/// within one mode p^b x^c = sum_k k! C(b,k) C(c,k) (-i)^k x^{c-k} p^{b-k}.
/// Coefficients are Gaussian integers, so the expansion is exact.
inline std::vector<std::pair<Monomial, cplx>> ordered_product(const Monomial& lhs,
                                                              const Monomial& rhs) {
  const int K = lhs.modes();
  assert(rhs.modes() == K);
  std::vector<std::pair<std::vector<std::uint8_t>, cplx>> acc;
  acc.emplace_back(std::vector<std::uint8_t>(static_cast<std::size_t>(2 * K), 0), cplx{1.0, 0.0});
  for (int m = 0; m < K; ++m) {
    const int a = lhs.x_power(m), b = lhs.p_power(m);
    const int c = rhs.x_power(m), d = rhs.p_power(m);
    std::vector<std::pair<std::vector<std::uint8_t>, cplx>> next;
    for (int k = 0; k <= std::min(b, c); ++k) {
      const cplx w = factorial(k) * binomial(b, k) * binomial(c, k) * minus_i_pow(k);
      for (const auto& [exps, coeff] : acc) {
        auto e = exps;
        e[static_cast<std::size_t>(m)] = static_cast<std::uint8_t>(a + c - k);
        e[static_cast<std::size_t>(K + m)] = static_cast<std::uint8_t>(b + d - k);
        next.emplace_back(std::move(e), coeff * w);
      }
    }
    acc = std::move(next);
  }
  std::vector<std::pair<Monomial, cplx>> out;
  out.reserve(acc.size());
  for (auto& [exps, coeff] : acc) out.emplace_back(Monomial(std::move(exps)), coeff);
  return out;
}

} // namespace detail

/// Complex-coefficient polynomial in K coordinates and K momenta.
class OperatorPoly {
public:
  using Terms = std::map<Monomial, cplx>;

  OperatorPoly() = default;
  explicit OperatorPoly(int K) : K_(K) { assert(K >= 1); }

  static OperatorPoly constant(int K, cplx c) {
    OperatorPoly r(K);
    r.add_term(Monomial(K), c);
    return r;
  }
  /// O_i of the canonical basis: i < K gives x_{i+1}, otherwise p_{i-K+1}.
  static OperatorPoly basis(int K, int i, cplx c = 1.0) {
    OperatorPoly r(K);
    r.add_term(Monomial::basis(K, i), c);
    return r;
  }
  static OperatorPoly x(int K, int m) { return basis(K, m); }
  static OperatorPoly p(int K, int m) { return basis(K, K + m); }
  /// sum_i c_i O_i
  template <class Coeffs>
  static OperatorPoly linear(int K, const Coeffs& c) {
    OperatorPoly r(K);
    for (int i = 0; i < 2 * K; ++i) r.add_term(Monomial::basis(K, i), c[i]);
    return r;
  }

  int modes() const { return K_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  bool has_degree(int d) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return t.first.degree() == d; });
  }

  cplx coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? cplx{} : it->second;
  }
  cplx constant_part() const { return coefficient(Monomial(K_)); }
  /// Coefficient of O_i.
  cplx linear_coefficient(int i) const { return coefficient(Monomial::basis(K_, i)); }

  OperatorPoly part_of_degree(int d) const {
    OperatorPoly r(K_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) r.terms_.emplace(m, c);
    return r;
  }
  OperatorPoly without_constant() const {
    OperatorPoly r = *this;
    r.terms_.erase(Monomial(K_));
    return r;
  }

  /// Largest coefficient magnitude.
  double norm_inf() const {
    double n = 0.0;
    for (const auto& [m, c] : terms_) n = std::max(n, std::abs(c));
    return n;
  }

  void add_term(const Monomial& m, cplx c) {
    assert(m.modes() == K_);
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kZeroThreshold) terms_.erase(it);
    if (m.degree() > kMaxDegree && terms_.count(m))
      throw DegreeOverflow("term " + m.to_string() + " exceeds degree " +
                           std::to_string(kMaxDegree));
  }

  OperatorPoly& operator+=(const OperatorPoly& o) {
    check_modes(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  OperatorPoly& operator-=(const OperatorPoly& o) {
    check_modes(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  OperatorPoly& operator*=(cplx s) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (std::abs(it->second) < kZeroThreshold)
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  friend OperatorPoly operator+(OperatorPoly a, const OperatorPoly& b) { return a += b; }
  friend OperatorPoly operator-(OperatorPoly a, const OperatorPoly& b) { return a -= b; }
  friend OperatorPoly operator-(OperatorPoly a) { return a *= -1.0; }
  friend OperatorPoly operator*(OperatorPoly a, cplx s) { return a *= s; }
  friend OperatorPoly operator*(cplx s, OperatorPoly a) { return a *= s; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& [m, c] : terms_) {
      // real or imaginary coefficients carry their sign into the separator
      const bool real = c.imag() == 0.0, imag = c.real() == 0.0;
      const double lead = real ? c.real() : c.imag();
      const bool negative = (real || imag) && lead < 0.0;
      os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
      first = false;
      const double mag = std::abs(lead);
      const bool bare = m.degree() > 0;
      if (real) {
        if (!(bare && mag == 1.0)) os << mag << (bare ? "*" : "");
      } else if (imag) {
        if (mag != 1.0) os << mag;
        os << "i" << (bare ? "*" : "");
      } else {
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)" << (bare ? "*" : "");
      }
      if (bare) os << m.to_string();
    }
    return os.str();
  }

  void check_modes(const OperatorPoly& o) const {
    if (o.K_ != K_)
      throw DimensionMismatch("operator polynomials over " + std::to_string(K_) + " and " +
                              std::to_string(o.K_) + " modes");
  }

private:
  int K_ = 1;
  Terms terms_;
};

/// Coefficient-wise comparison within an absolute tolerance.
inline bool approx_equal(const OperatorPoly& a, const OperatorPoly& b, double tol = 1e-12) {
  return a.modes() == b.modes() && (a - b).norm_inf() <= tol;
}

inline bool operator==(const OperatorPoly& a, const OperatorPoly& b) { return approx_equal(a, b); }

/// Normal-ordered product. Throws DegreeOverflow when deg p + deg q > 4.
inline OperatorPoly multiply(const OperatorPoly& p, const OperatorPoly& q) {
  p.check_modes(q);
  if (p.degree() + q.degree() > kMaxDegree)
    throw DegreeOverflow("product of degrees " + std::to_string(p.degree()) + " and " +
                         std::to_string(q.degree()));
  OperatorPoly r(p.modes());
  for (const auto& [mp, cp] : p.terms())
    for (const auto& [mq, cq] : q.terms())
      for (const auto& [m, w] : detail::ordered_product(mp, mq)) r.add_term(m, cp * cq * w);
  return r;
}

namespace detail {

/// Arbitrary but fixed total order on polynomials.
inline bool poly_less(const OperatorPoly& a, const OperatorPoly& b) {
  auto key = [](const std::pair<const Monomial, cplx>& t) {
    return std::make_tuple(t.first, t.second.real(), t.second.imag());
  };
  return std::lexicographical_compare(a.terms().begin(), a.terms().end(), b.terms().begin(), b.terms().end(),
                                      [&](const auto& x, const auto& y) { return key(x) < key(y); });
}

} // namespace detail

/// pq - qp. The leading (commuting) parts of the two orderings are formed
/// monomial by monomial and cancel exactly, so only the result degree,
/// deg p + deg q - 2, is subject to the degree cap. Arguments are put in a
/// fixed order first so that [q, p] is exactly -[p, q].
inline OperatorPoly commutator(const OperatorPoly& p, const OperatorPoly& q) {
  p.check_modes(q);
  if (p.is_zero() || q.is_zero()) return OperatorPoly(p.modes());
  if (p.degree() + q.degree() - 2 > kMaxDegree)
    throw DegreeOverflow("commutator of degrees " + std::to_string(p.degree()) + " and " +
                         std::to_string(q.degree()));
  if (detail::poly_less(q, p)) return commutator(q, p) * -1.0;
  std::map<Monomial, cplx> acc;
  for (const auto& [mp, cp] : p.terms()) {
    for (const auto& [mq, cq] : q.terms()) {
      std::map<Monomial, cplx> diff;
      for (const auto& [m, w] : detail::ordered_product(mp, mq)) diff[m] += w;
      for (const auto& [m, w] : detail::ordered_product(mq, mp)) diff[m] -= w;
      for (const auto& [m, w] : diff)
        if (w != cplx{}) acc[m] += cp * cq * w;
    }
  }
  OperatorPoly r(p.modes());
  for (const auto& [m, c] : acc) r.add_term(m, c);
  return r;
}

/// Hermitian adjoint: conjugate the coefficients and reverse every monomial,
/// (c x^a p^b)^dagger = c* p^b x^a, then restore normal order.
inline OperatorPoly adjoint(const OperatorPoly& p) {
  OperatorPoly r(p.modes());
  for (const auto& [m, c] : p.terms())
    for (const auto& [mm, w] : detail::ordered_product(m.momentum_part(), m.coordinate_part()))
      r.add_term(mm, std::conj(c) * w);
  return r;
}

inline bool is_hermitian(const OperatorPoly& p, double tol = 1e-12) {
  return approx_equal(adjoint(p), p, tol);
}

} // namespace quadham

#endif // QUADHAM_OPCORE_HPP
