#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_n), with elements stored
// as rational coordinates in the power basis 1, zeta, ..., zeta^(phi(n)-1)
// modulo the n-th cyclotomic polynomial.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "k3fix/errors.hpp"
#include "k3fix/number_theory.hpp"
#include "k3fix/polynomial.hpp"
#include "k3fix/rational.hpp"

namespace k3fix {

/// Phi_n, obtained by dividing x^n - 1 by Phi_d for every proper divisor d.
inline IntPolynomial cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw UsageError("cyclotomic_polynomial: n must be >= 1");
  IntPolynomial p = IntPolynomial::monomial(1, static_cast<std::size_t>(n)) -
                    IntPolynomial::constant(1);
  for (std::int64_t d : divisors(n)) {
    if (d == n) continue;
    auto [q, r] = divmod(p, cyclotomic_polynomial(d));
    if (!r.is_zero()) throw InvariantError("x^n - 1 not divisible by Phi_d");
    p = std::move(q);
  }
  return p;
}

namespace detail {

/// Immutable per-conductor data: Phi_n and the reductions of x^k modulo
/// Phi_n for 0 <= k < max(n, 2*phi(n) - 1), which covers every power of
/// zeta and any product of two reduced elements.
struct CyclotomicFieldData {
  std::int64_t conductor = 1;
  std::size_t degree = 1;
  IntPolynomial modulus;
  std::vector<std::vector<Integer>> power_table;
};

inline std::shared_ptr<const CyclotomicFieldData> build_field_data(std::int64_t n) {
  auto data = std::make_shared<CyclotomicFieldData>();
  data->conductor = n;
  data->modulus = cyclotomic_polynomial(n);
  data->degree = static_cast<std::size_t>(data->modulus.degree());
  const std::size_t deg = data->degree;
  const std::size_t rows = std::max<std::size_t>(2 * deg - 1, static_cast<std::size_t>(n));
  data->power_table.assign(rows, std::vector<Integer>(deg, Integer(0)));
  // x^k for k < deg is a basis vector; x^(k+1) = x * x^k reduced using the
  // monic relation x^deg = -(c_0 + ... + c_{deg-1} x^{deg-1}).
  std::vector<Integer> cur(deg, Integer(0));
  cur[0] = 1;
  for (std::size_t k = 0; k < rows; ++k) {
    data->power_table[k] = cur;
    const Integer top = cur[deg - 1];
    for (std::size_t i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < deg; ++i) cur[i] -= top * data->modulus.coeff(i);
  }
  return data;
}

/// Field data is built once per conductor and shared read-only.
inline std::shared_ptr<const CyclotomicFieldData> field_data(std::int64_t n) {
  if (n < 1) throw UsageError("cyclotomic field: conductor must be >= 1");
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const CyclotomicFieldData>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto data = build_field_data(n);
  cache.emplace(n, data);
  return data;
}

}  // namespace detail

/// Element of Q(zeta_n). Values are immutable.
class CyclotomicNumber {
 public:
  /// Zero of Q(zeta_n).
  explicit CyclotomicNumber(std::int64_t conductor)
      : field_(detail::field_data(conductor)),
        coords_(field_->degree, Rational(0)) {}

  CyclotomicNumber(std::int64_t conductor, std::vector<Rational> coords)
      : field_(detail::field_data(conductor)), coords_(std::move(coords)) {
    if (coords_.size() != field_->degree)
      throw UsageError("CyclotomicNumber: expected " +
                       std::to_string(field_->degree) + " coordinates for conductor " +
                       std::to_string(conductor) + ", got " +
                       std::to_string(coords_.size()));
  }

  static CyclotomicNumber from_rational(std::int64_t conductor, const Rational& r) {
    CyclotomicNumber z(conductor);
    z.coords_[0] = r;
    return z;
  }

  std::int64_t conductor() const { return field_->conductor; }
  std::size_t degree() const { return field_->degree; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const Rational& c) { return c == 0; });
  }

  /// True when the value lies in Q, i.e. only the constant coordinate is set.
  bool is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(),
                       [](const Rational& c) { return c == 0; });
  }

  friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    a.require_same_field(b);
    CyclotomicNumber out = a;
    for (std::size_t i = 0; i < out.coords_.size(); ++i) out.coords_[i] += b.coords_[i];
    return out;
  }

  friend CyclotomicNumber operator-(const CyclotomicNumber& a) {
    CyclotomicNumber out = a;
    for (auto& c : out.coords_) c = -c;
    return out;
  }

  friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a + (-b);
  }

  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    a.require_same_field(b);
    const std::size_t deg = a.degree();
    std::vector<Rational> prod(2 * deg - 1, Rational(0));
    for (std::size_t i = 0; i < deg; ++i) {
      if (a.coords_[i] == 0) continue;
      for (std::size_t j = 0; j < deg; ++j) prod[i + j] += a.coords_[i] * b.coords_[j];
    }
    return a.reduce(prod);
  }

  friend CyclotomicNumber operator*(const Rational& s, const CyclotomicNumber& a) {
    CyclotomicNumber out = a;
    for (auto& c : out.coords_) c *= s;
    return out;
  }

  /// Multiplicative inverse by extended Euclid against Phi_n.
  CyclotomicNumber inverse() const {
    if (is_zero()) throw ArithmeticError("inverse of zero in Q(zeta_" +
                                         std::to_string(conductor()) + ")");
    const RatPolynomial s = inverse_mod(RatPolynomial(coords_), to_rational(field_->modulus));
    std::vector<Rational> v(degree(), Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.coeff(i);
    return CyclotomicNumber(conductor(), std::move(v));
  }

  friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a * b.inverse();
  }

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a.conductor() == b.conductor() && a.coords_ == b.coords_;
  }

  /// Image under the Galois automorphism zeta -> zeta^k (k a unit mod n).
  CyclotomicNumber conjugate(std::int64_t k) const;

  /// Sum of all Galois conjugates; always rational.
  Rational galois_trace() const;

  /// Image under the complex embedding zeta -> exp(2 pi i k / n).
  std::complex<double> embed(std::int64_t k = 1) const {
    const double n = static_cast<double>(conductor());
    std::complex<double> z = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == 0) continue;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod_floor(
                                     k * static_cast<std::int64_t>(i), conductor())) /
                           n;
      z += to_double(coords_[i]) * std::polar(1.0, angle);
    }
    return z;
  }

  std::string str() const {
    std::vector<Rational> v = coords_;
    return RatPolynomial(std::move(v)).str("z");
  }

 private:
  void require_same_field(const CyclotomicNumber& other) const {
    if (conductor() != other.conductor())
      throw UsageError("cyclotomic arithmetic across conductors " +
                       std::to_string(conductor()) + " and " +
                       std::to_string(other.conductor()));
  }

  CyclotomicNumber reduce(std::span<const Rational> poly) const {
    std::vector<Rational> out(degree(), Rational(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      if (poly[k] == 0) continue;
      const auto& row = field_->power_table[k];
      for (std::size_t i = 0; i < out.size(); ++i)
        if (row[i] != 0) out[i] += poly[k] * row[i];
    }
    return CyclotomicNumber(conductor(), std::move(out));
  }

  std::shared_ptr<const detail::CyclotomicFieldData> field_;
  std::vector<Rational> coords_;
};

/// zeta_n^k in the power basis (k taken mod n).
inline CyclotomicNumber root_power(std::int64_t n, std::int64_t k) {
  const auto data = detail::field_data(n);
  const auto& row = data->power_table[static_cast<std::size_t>(mod_floor(k, n))];
  return CyclotomicNumber(n, std::vector<Rational>(row.begin(), row.end()));
}

inline CyclotomicNumber CyclotomicNumber::conjugate(std::int64_t k) const {
  if (!is_unit_mod(k, conductor()))
    throw UsageError("conjugate: exponent " + std::to_string(k) +
                     " is not a unit mod " + std::to_string(conductor()));
  CyclotomicNumber out(conductor());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    out = out + coords_[i] * root_power(conductor(), k * static_cast<std::int64_t>(i));
  }
  return out;
}

inline Rational CyclotomicNumber::galois_trace() const {
  CyclotomicNumber sum(conductor());
  for (std::int64_t k = 1; k <= conductor(); ++k)
    if (is_unit_mod(k, conductor())) sum = sum + conjugate(k);
  if (!sum.is_rational()) throw InvariantError("Galois trace is not rational");
  return sum.coords()[0];
}

/// Coordinates in the power basis; a value is zero iff all are zero.
inline std::vector<Rational> rational_coordinates(const CyclotomicNumber& a) {
  return a.coords();
}

/// Sum of the primitive n-th roots of unity. Equals moebius(n).
inline std::int64_t primitive_trace(std::int64_t n) {
  CyclotomicNumber sum(n);
  for (std::int64_t k = 1; k <= n; ++k)
    if (is_unit_mod(k, n)) sum = sum + root_power(n, k);
  if (!sum.is_rational() || !is_integral(sum.coords()[0]))
    throw InvariantError("primitive root sum is not an integer");
  return to_int64(numerator_of(sum.coords()[0]));
}

}  // namespace k3fix
