#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3fix/errors.hpp"
#include "k3fix/rational.hpp"

namespace k3fix {

enum class Sense { kEqual, kLessEqual, kGreaterEqual };

inline const char* sense_symbol(Sense s) {
  switch (s) {
    case Sense::kEqual: return "=";
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
  }
  return "?";
}

/// sum_k coeffs[k] * x_k  (sense)  rhs
struct LinearRow {
  std::vector<Rational> coeffs;
  Sense sense = Sense::kEqual;
  Rational rhs;
  std::string label;

  Rational evaluate(const std::vector<Rational>& x) const {
    Rational acc = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * x[k];
    return acc;
  }

  bool satisfied_by(const std::vector<Rational>& x) const {
    const Rational lhs = evaluate(x);
    switch (sense) {
      case Sense::kEqual: return lhs == rhs;
      case Sense::kLessEqual: return lhs <= rhs;
      case Sense::kGreaterEqual: return lhs >= rhs;
    }
    return false;
  }
};

/// Exact rational linear equalities and inequalities over named unknowns.
class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  explicit ConstraintSystem(std::vector<std::string> variables)
      : variables_(std::move(variables)) {}

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<LinearRow>& equalities() const { return equalities_; }
  const std::vector<LinearRow>& inequalities() const { return inequalities_; }

  std::size_t index_of(const std::string& name) const {
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) throw UsageError("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - variables_.begin());
  }

  bool has_variable(const std::string& name) const {
    return std::find(variables_.begin(), variables_.end(), name) != variables_.end();
  }

  void add(LinearRow row) {
    if (row.coeffs.size() != variables_.size())
      throw UsageError("constraint row has " + std::to_string(row.coeffs.size()) +
                       " coefficients, system has " +
                       std::to_string(variables_.size()) + " variables");
    if (row.sense == Sense::kEqual)
      equalities_.push_back(std::move(row));
    else
      inequalities_.push_back(std::move(row));
  }

  /// Convenience: row from sparse (name, coefficient) pairs.
  void add(const std::vector<std::pair<std::string, Rational>>& terms, Sense sense,
           Rational rhs, std::string label = {}) {
    LinearRow row{std::vector<Rational>(variables_.size(), Rational(0)), sense,
                  std::move(rhs), std::move(label)};
    for (const auto& [name, c] : terms) row.coeffs[index_of(name)] += c;
    add(std::move(row));
  }

  bool satisfied_by(const std::vector<Rational>& x) const {
    return std::all_of(equalities_.begin(), equalities_.end(),
                       [&](const LinearRow& r) { return r.satisfied_by(x); }) &&
           std::all_of(inequalities_.begin(), inequalities_.end(),
                       [&](const LinearRow& r) { return r.satisfied_by(x); });
  }

 private:
  std::vector<std::string> variables_;
  std::vector<LinearRow> equalities_;
  std::vector<LinearRow> inequalities_;
};

/// constant + sum over free variables of coefficient * x_free.
struct AffineExpression {
  Rational constant;
  std::map<std::size_t, Rational> terms;  // keyed by variable index

  Rational evaluate(const std::vector<Rational>& x) const {
    Rational acc = constant;
    for (const auto& [k, c] : terms) acc += c * x[k];
    return acc;
  }
};

/// Row-reduced form of the equality part of a system: every pivot variable
/// written as an affine function of the free variables.
struct ReducedEqualities {
  bool consistent = true;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free;
  std::map<std::size_t, AffineExpression> solved;  // pivot index -> expression
};

/// Gauss-Jordan elimination of the equalities. Columns are scanned in
/// `column_order` (default: declaration order), so variables listed first
/// are preferred as pivots.
inline ReducedEqualities reduce_equalities(
    const ConstraintSystem& sys, std::optional<std::vector<std::size_t>> column_order = {}) {
  const std::size_t nvars = sys.variables().size();
  std::vector<std::size_t> order;
  if (column_order) {
    order = *column_order;
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() != nvars ||
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        (!sorted.empty() && sorted.back() >= nvars))
      throw UsageError("column order must be a permutation of the variables");
  } else {
    for (std::size_t k = 0; k < nvars; ++k) order.push_back(k);
  }

  // Augmented matrix [A | b].
  std::vector<std::vector<Rational>> m;
  for (const auto& row : sys.equalities()) {
    std::vector<Rational> r = row.coeffs;
    r.push_back(row.rhs);
    m.push_back(std::move(r));
  }

  ReducedEqualities out;
  std::size_t prow = 0;
  for (std::size_t col : order) {
    if (prow == m.size()) break;
    std::size_t sel = prow;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[prow], m[sel]);
    const Rational inv = Rational(1) / m[prow][col];
    for (auto& v : m[prow]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == prow || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c <= nvars; ++c)
        if (m[prow][c] != 0) m[r][c] -= f * m[prow][c];
    }
    out.pivots.push_back(col);
    ++prow;
  }
  out.rank = prow;
  for (std::size_t r = prow; r < m.size(); ++r)
    if (m[r][nvars] != 0) out.consistent = false;

  std::vector<bool> is_pivot(nvars, false);
  for (std::size_t p : out.pivots) is_pivot[p] = true;
  for (std::size_t k : order)
    if (!is_pivot[k]) out.free.push_back(k);

  for (std::size_t r = 0; r < prow; ++r) {
    AffineExpression e;
    e.constant = m[r][nvars];
    for (std::size_t k : out.free)
      if (m[r][k] != 0) e.terms[k] = -m[r][k];
    out.solved.emplace(out.pivots[r], std::move(e));
  }
  return out;
}

/// Solve the equalities for every variable not named in `free_names`,
/// expressing each in terms of the named ones. Throws when the chosen free
/// set does not parametrize the solution space.
inline std::map<std::string, AffineExpression> solve_for(
    const ConstraintSystem& sys, const std::vector<std::string>& free_names) {
  std::vector<bool> wanted_free(sys.variables().size(), false);
  for (const auto& n : free_names) wanted_free[sys.index_of(n)] = true;
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < wanted_free.size(); ++k)
    if (!wanted_free[k]) order.push_back(k);
  for (std::size_t k = 0; k < wanted_free.size(); ++k)
    if (wanted_free[k]) order.push_back(k);

  const ReducedEqualities red = reduce_equalities(sys, order);
  if (!red.consistent) throw InfeasibleError("equality system is inconsistent");
  for (std::size_t p : red.pivots)
    if (wanted_free[p])
      throw UsageError("variable '" + sys.variables()[p] +
                       "' is determined by the others and cannot be free");
  for (std::size_t f : red.free)
    if (!wanted_free[f])
      throw UsageError("variable '" + sys.variables()[f] +
                       "' is not determined by the chosen free variables");

  std::map<std::string, AffineExpression> out;
  for (const auto& [p, e] : red.solved) out.emplace(sys.variables()[p], e);
  return out;
}

/// Human-readable "x = c + a*y + ..." with variable names.
inline std::string format_affine(const std::string& lhs, const AffineExpression& e,
                                 const std::vector<std::string>& names) {
  std::string rhs = e.constant != 0 || e.terms.empty() ? to_string(e.constant) : "";
  for (const auto& [k, c] : e.terms) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (rhs.empty())
      rhs = neg ? "-" : "";
    else
      rhs += neg ? " - " : " + ";
    if (mag != 1) rhs += to_string(mag) + "*";
    rhs += names[k];
  }
  return lhs + " = " + rhs;
}

}  // namespace k3fix
