#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <string>

#include "k3fix/errors.hpp"

namespace k3fix {

/// Arbitrary precision integer.
using Integer = boost::multiprecision::cpp_int;

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline Integer denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

/// "p/q" or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  if (is_integral(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    const Integer den(text.substr(slash + 1));
    if (den == 0) throw UsageError("zero denominator in '" + text + "'");
    return Rational(Integer(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw UsageError("not a rational number: '" + text + "'");
  }
}

inline std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw ArithmeticError("integer does not fit in 64 bits: " + v.str());
  return static_cast<std::int64_t>(v);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace k3fix
