#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "k3fix/errors.hpp"
#include "k3fix/rational.hpp"

namespace k3fix {

/// Dense univariate polynomial, coefficient k multiplies x^k. The zero
/// polynomial has no coefficients; all other values carry a nonzero
/// leading coefficient.
template <class Coeff>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static Polynomial constant(Coeff c) { return Polynomial({std::move(c)}); }
  static Polynomial monomial(Coeff c, std::size_t degree) {
    std::vector<Coeff> v(degree + 1, Coeff(0));
    v[degree] = std::move(c);
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree, with -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  Coeff coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Coeff(0);
  }
  const Coeff& leading() const { return coeffs_.back(); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Coeff> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Coeff(0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] += b.coeffs_[k];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a) {
    std::vector<Coeff> v = a.coeffs_;
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (-b);
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> v(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// Quotient and remainder. Over the integers the divisor must be monic
  /// (or the division must be exact coefficientwise).
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                  const Polynomial& b) {
    if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
    std::vector<Coeff> rem = a.coeffs_;
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<Coeff> quot(a.coeffs_.size() - b.coeffs_.size() + 1, Coeff(0));
    const std::size_t db = b.coeffs_.size() - 1;
    for (std::size_t k = quot.size(); k-- > 0;) {
      const Coeff& top = rem[k + db];
      if (top == 0) continue;
      Coeff q = top / b.leading();
      if (q * b.leading() != top)
        throw ArithmeticError("inexact polynomial division");
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs_[j];
      quot[k] = std::move(q);
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const Coeff& c = coeffs_[k];
      if (c == 0) continue;
      const bool neg = c < 0;
      const Coeff mag = neg ? Coeff(-c) : c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      const bool unit = (mag == 1);
      if (!unit || k == 0) {
        if constexpr (std::is_same_v<Coeff, Rational>) {
          out += to_string(mag);
        } else {
          out += mag.str();
        }
      }
      if (k >= 1) out += var;
      if (k >= 2) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Coeff> coeffs_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

inline RatPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> v(p.coeffs().begin(), p.coeffs().end());
  return RatPolynomial(std::move(v));
}

/// Extended Euclid over Q[x]: returns (g, s, t) with s*a + t*b = g and g
/// monic (or zero when both inputs are zero).
inline std::tuple<RatPolynomial, RatPolynomial, RatPolynomial> extended_gcd(
    const RatPolynomial& a, const RatPolynomial& b) {
  RatPolynomial r0 = a, r1 = b;
  RatPolynomial s0 = RatPolynomial::constant(1), s1;
  RatPolynomial t0, t1 = RatPolynomial::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (!r0.is_zero()) {
    const auto scale = RatPolynomial::constant(Rational(1) / r0.leading());
    r0 = r0 * scale;
    s0 = s0 * scale;
    t0 = t0 * scale;
  }
  return {r0, s0, t0};
}

/// s with s * a = 1 modulo m, for a coprime to m. Half of the extended
/// Euclidean algorithm; remainders are kept monic to limit coefficient growth.
inline RatPolynomial inverse_mod(const RatPolynomial& a, const RatPolynomial& m) {
  auto scaled = [](const RatPolynomial& p, const Rational& c) {
    return p * RatPolynomial::constant(c);
  };
  RatPolynomial r0 = m, s0;  // s_k * a = r_k (mod m)
  RatPolynomial r1 = divmod(a, m).second, s1 = RatPolynomial::constant(1);
  if (r1.is_zero()) throw ArithmeticError("polynomial is not invertible modulo m");
  s1 = scaled(s1, Rational(1) / r1.leading());
  r1 = scaled(r1, Rational(1) / r1.leading());
  while (r1.degree() > 0) {
    auto [q, r] = divmod(r0, r1);
    if (r.is_zero()) throw ArithmeticError("polynomial is not invertible modulo m");
    RatPolynomial s = s0 - q * s1;
    const Rational c = Rational(1) / r.leading();
    r0 = std::exchange(r1, scaled(r, c));
    s0 = std::exchange(s1, scaled(s, c));
  }
  return divmod(s1, m).second;
}

}  // namespace k3fix
