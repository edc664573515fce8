#pragma once

// Holomorphic and topological Lefschetz constraints for a non-symplectic
// automorphism of order I on a K3 surface.
//
// Holomorphic side, with zeta = zeta_I:
//
//   1 + zeta^(I-1) = sum_t m_t / ((1 - zeta^i)(1 - zeta^j))
//                    + g_sum * (1 + zeta) / (1 - zeta)^2
//
// where t = (i, j) runs over isolated point types (i + j = 1 mod I),
// m_t counts points of type t and g_sum = sum over fixed curves of (1 - g).
// The per-curve term already uses C^2 = 2g - 2.
//
// Topological side: chi(fixed locus) = 2 + tr(sigma* | S) + tr(sigma* | T).

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "k3fix/cyclotomic.hpp"
#include "k3fix/errors.hpp"
#include "k3fix/linear_system.hpp"
#include "k3fix/number_theory.hpp"

namespace k3fix {

/// Local eigenvalue exponents (i, j) at a fixed point, normalized to
/// 0 <= i <= j < order with i + j = 1 (mod order). The pair (0, 1) is the
/// type of a point lying on a fixed curve.
class PointType {
 public:
  PointType() = default;
  PointType(std::int64_t order, std::int64_t i, std::int64_t j) : order_(order) {
    if (order < 1) throw UsageError("point type: order must be >= 1");
    i = mod_floor(i, order);
    j = mod_floor(j, order);
    if (mod_floor(i + j - 1, order) != 0)
      throw UsageError("point type (" + std::to_string(i) + "," + std::to_string(j) +
                       ") violates i + j = 1 mod " + std::to_string(order));
    i_ = std::min(i, j);
    j_ = std::max(i, j);
  }

  static PointType curve_point(std::int64_t order) { return PointType(order, 0, 1); }

  std::int64_t order() const { return order_; }
  std::int64_t i() const { return i_; }
  std::int64_t j() const { return j_; }

  bool is_isolated() const { return order_ > 1 && i_ != 0 && j_ != 0; }

  std::string str() const {
    return "(" + std::to_string(i_) + "," + std::to_string(j_) + ")";
  }

  friend auto operator<=>(const PointType&, const PointType&) = default;

 private:
  std::int64_t order_ = 1;
  std::int64_t i_ = 0;
  std::int64_t j_ = 1;
};

/// Isolated types for order I, increasing in i: 2 <= i <= j <= I - 1.
inline std::vector<PointType> isolated_types(std::int64_t order) {
  std::vector<PointType> out;
  for (std::int64_t i = 2; i < order; ++i) {
    const std::int64_t j = mod_floor(1 - i, order);
    if (j >= i) out.emplace_back(order, i, j);
  }
  return out;
}

inline std::string variable_name(const PointType& t) { return "m" + t.str(); }
inline const std::string kGSumVariable = "g_sum";

/// Curves of the fixed locus, recorded by genus.
struct CurveContribution {
  std::vector<std::int64_t> genera;  // kept sorted

  std::int64_t count() const { return static_cast<std::int64_t>(genera.size()); }
  std::int64_t g_sum() const {
    std::int64_t s = 0;
    for (auto g : genera) s += 1 - g;
    return s;
  }
  friend auto operator<=>(const CurveContribution&, const CurveContribution&) = default;
};

struct FixedLocusConfig {
  std::int64_t order = 1;
  std::map<PointType, std::int64_t> points;  // isolated types, multiplicity > 0
  CurveContribution curves;
  std::int64_t euler = 0;

  std::int64_t isolated_count() const {
    std::int64_t m = 0;
    for (const auto& [t, k] : points) m += k;
    return m;
  }

  std::int64_t multiplicity(const PointType& t) const {
    auto it = points.find(t);
    return it == points.end() ? 0 : it->second;
  }

  /// chi = M + sum(2 - 2g).
  bool euler_consistent() const { return euler == isolated_count() + 2 * curves.g_sum(); }

  friend bool operator==(const FixedLocusConfig&, const FixedLocusConfig&) = default;
};

/// a(P) = 1 / ((1 - zeta^i)(1 - zeta^j)).
inline CyclotomicNumber point_term(const PointType& t) {
  const std::int64_t n = t.order();
  if (!t.is_isolated())
    throw UsageError("point_term: type " + t.str() + " lies on a fixed curve");
  const auto one = CyclotomicNumber::from_rational(n, 1);
  return ((one - root_power(n, t.i())) * (one - root_power(n, t.j()))).inverse();
}

/// (1 + zeta) / (1 - zeta)^2, the curve term per unit of (1 - g).
inline CyclotomicNumber curve_unit_term(std::int64_t order) {
  if (order < 2) throw UsageError("curve_unit_term: order must be >= 2");
  const auto one = CyclotomicNumber::from_rational(order, 1);
  const auto z = root_power(order, 1);
  return (one + z) / ((one - z) * (one - z));
}

/// Traces on H^0(O) and H^2(O): 1 + zeta^(I-1).
inline CyclotomicNumber holomorphic_lhs(std::int64_t order) {
  if (order < 2) throw UsageError("holomorphic_lhs: order must be >= 2");
  return CyclotomicNumber::from_rational(order, 1) + root_power(order, order - 1);
}

/// One rational equality per power-basis coordinate, in the unknowns
/// m(i,j) (one per isolated type) followed by g_sum.
inline ConstraintSystem build_holomorphic_system(std::int64_t order) {
  const auto types = isolated_types(order);
  std::vector<std::string> names;
  for (const auto& t : types) names.push_back(variable_name(t));
  names.push_back(kGSumVariable);
  ConstraintSystem sys(names);

  std::vector<std::vector<Rational>> columns;
  for (const auto& t : types) columns.push_back(rational_coordinates(point_term(t)));
  columns.push_back(rational_coordinates(curve_unit_term(order)));
  const auto lhs = rational_coordinates(holomorphic_lhs(order));

  for (std::size_t r = 0; r < lhs.size(); ++r) {
    LinearRow row;
    row.sense = Sense::kEqual;
    row.rhs = lhs[r];
    row.label = "holomorphic[" + std::to_string(r) + "]";
    for (const auto& col : columns) row.coeffs.push_back(col[r]);
    sys.add(std::move(row));
  }
  return sys;
}

/// LHS minus RHS of the holomorphic equation for a configuration, computed
/// directly in the field; zero iff the configuration satisfies it.
inline CyclotomicNumber holomorphic_residual(const FixedLocusConfig& c) {
  CyclotomicNumber rhs = Rational(c.curves.g_sum()) * curve_unit_term(c.order);
  for (const auto& [t, m] : c.points) rhs = rhs + Rational(m) * point_term(t);
  return holomorphic_lhs(c.order) - rhs;
}

/// Trace on T: q copies of every primitive I-th root of unity.
inline std::int64_t transcendental_trace(std::int64_t order, std::int64_t q) {
  if (q < 1) throw UsageError("transcendental_trace: q must be >= 1");
  return q * primitive_trace(order);
}

inline std::int64_t euler_characteristic(std::int64_t order, std::int64_t trace_on_S,
                                         std::int64_t q) {
  return 2 + trace_on_S + transcendental_trace(order, q);
}

}  // namespace k3fix
