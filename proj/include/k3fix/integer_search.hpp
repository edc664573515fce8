#pragma once

// Exhaustive enumeration of the integer points of a bounded polytope given
// by exact rational equalities and inequalities.
//
// The equalities are row reduced once; the search then runs over the free
// variables only, with every pivot variable recovered as an affine function
// of them. All rows are scaled to integers, free-variable domains are
// tightened by bound propagation, and a depth-first search prunes on
// interval bounds of the remaining contributions and on divisibility of
// pivot rows as soon as they are fully assigned.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "k3fix/errors.hpp"
#include "k3fix/linear_system.hpp"
#include "k3fix/rational.hpp"

namespace k3fix {

struct VariableBounds {
  std::optional<std::int64_t> lower;
  std::optional<std::int64_t> upper;
};

struct IntegerSearchOptions {
  unsigned threads = 1;
};

using IntegerPoint = std::vector<std::int64_t>;

namespace detail {

constexpr std::int64_t kMagnitudeLimit = std::int64_t{1} << 52;

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// sum_f coeffs[f] * y_f <= rhs over the free variables y.
struct IntRow {
  std::vector<std::int64_t> coeffs;
  std::int64_t rhs = 0;
};

/// divisor * x_pivot = constant + sum_f coeffs[f] * y_f.
struct PivotRow {
  std::size_t variable = 0;
  std::int64_t divisor = 1;
  std::int64_t constant = 0;
  std::vector<std::int64_t> coeffs;
  std::size_t last_depth = 0;  // deepest free index with a nonzero coefficient
};

inline std::int64_t checked(const Integer& v) {
  if (abs(v) > kMagnitudeLimit)
    throw ArithmeticError("coefficient too large for the integer search: " + v.str());
  return static_cast<std::int64_t>(v);
}

/// Scale (constant, coeffs) by the lcm of denominators.
inline std::pair<Integer, std::vector<Integer>> clear_denominators(
    const Rational& constant, const std::vector<Rational>& coeffs, Integer& scale) {
  scale = denominator_of(constant);
  for (const auto& c : coeffs) scale = boost::multiprecision::lcm(scale, denominator_of(c));
  std::vector<Integer> out;
  for (const auto& c : coeffs) out.push_back(numerator_of(c * scale));
  return {numerator_of(constant * scale), out};
}

class Search {
 public:
  Search(std::vector<IntRow> rows, std::vector<PivotRow> pivots,
         std::vector<std::int64_t> lo, std::vector<std::int64_t> hi)
      : rows_(std::move(rows)), pivots_(std::move(pivots)), lo_(std::move(lo)), hi_(std::move(hi)) {
    const std::size_t nf = lo_.size();
    // suffix_min_[r][d] = min over y_d..y_{nf-1} of their contribution to row r.
    suffix_min_.assign(rows_.size(), std::vector<std::int64_t>(nf + 1, 0));
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t d = nf; d-- > 0;) {
        const std::int64_t c = rows_[r].coeffs[d];
        suffix_min_[r][d] = suffix_min_[r][d + 1] + std::min(c * lo_[d], c * hi_[d]);
      }
    pivots_at_depth_.assign(nf + 1, {});
    for (std::size_t p = 0; p < pivots_.size(); ++p)
      pivots_at_depth_[nf == 0 ? 0 : pivots_[p].last_depth].push_back(p);
  }

  /// Points found with the first free variable restricted to values v with
  /// (v - lo) % stride == offset.
  std::vector<std::vector<std::int64_t>> run(std::size_t offset, std::size_t stride) const {
    std::vector<std::vector<std::int64_t>> found;
    std::vector<std::int64_t> y(lo_.size(), 0);
    std::vector<std::int64_t> partial(rows_.size(), 0);
    if (lo_.empty()) {
      if (offset == 0 && rows_ok(partial, 0) && pivots_integral(y, 0)) found.push_back(y);
      return found;
    }
    dfs(0, y, partial, found, offset, stride);
    return found;
  }

  const std::vector<PivotRow>& pivots() const { return pivots_; }

 private:
  bool rows_ok(const std::vector<std::int64_t>& partial, std::size_t depth) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (partial[r] + suffix_min_[r][depth] > rows_[r].rhs) return false;
    return true;
  }

  bool pivots_integral(const std::vector<std::int64_t>& y, std::size_t depth) const {
    for (std::size_t p : pivots_at_depth_[depth]) {
      const auto& pr = pivots_[p];
      if (pr.divisor == 1) continue;
      std::int64_t v = pr.constant;
      for (std::size_t f = 0; f <= pr.last_depth && f < y.size(); ++f) v += pr.coeffs[f] * y[f];
      if (v % pr.divisor != 0) return false;
    }
    return true;
  }

  void dfs(std::size_t depth, std::vector<std::int64_t>& y, std::vector<std::int64_t>& partial,
           std::vector<std::vector<std::int64_t>>& found, std::size_t offset,
           std::size_t stride) const {
    const std::size_t nf = lo_.size();
    for (std::int64_t v = lo_[depth]; v <= hi_[depth]; ++v) {
      if (depth == 0 && static_cast<std::size_t>(v - lo_[0]) % stride != offset) continue;
      y[depth] = v;
      for (std::size_t r = 0; r < rows_.size(); ++r) partial[r] += rows_[r].coeffs[depth] * v;
      if (rows_ok(partial, depth + 1) && pivots_integral(y, depth)) {
        if (depth + 1 == nf)
          found.push_back(y);
        else
          dfs(depth + 1, y, partial, found, offset, stride);
      }
      for (std::size_t r = 0; r < rows_.size(); ++r) partial[r] -= rows_[r].coeffs[depth] * v;
    }
  }

  std::vector<IntRow> rows_;
  std::vector<PivotRow> pivots_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<std::vector<std::int64_t>> suffix_min_;
  std::vector<std::vector<std::size_t>> pivots_at_depth_;
};

/// Bound propagation on sum_f a_f y_f <= b until no domain changes.
/// Returns false when some domain becomes empty.
inline bool propagate_bounds(const std::vector<IntRow>& rows,
                             std::vector<std::optional<std::int64_t>>& lo,
                             std::vector<std::optional<std::int64_t>>& hi) {
  const std::size_t nf = lo.size();
  for (int round = 0; round < 1000; ++round) {
    bool changed = false;
    for (const auto& row : rows) {
      // Minimum of each term; unknown when a needed bound is missing.
      std::vector<std::optional<std::int64_t>> term_min(nf);
      std::size_t unbounded = 0;
      std::int64_t finite_sum = 0;
      for (std::size_t f = 0; f < nf; ++f) {
        const std::int64_t c = row.coeffs[f];
        if (c == 0) {
          term_min[f] = 0;
          continue;
        }
        const auto& b = c > 0 ? lo[f] : hi[f];
        if (b) {
          term_min[f] = c * *b;
          finite_sum += c * *b;
        } else {
          ++unbounded;
        }
      }
      for (std::size_t f = 0; f < nf; ++f) {
        const std::int64_t c = row.coeffs[f];
        if (c == 0) continue;
        if (unbounded > (term_min[f] ? 0u : 1u)) continue;
        const std::int64_t rest = finite_sum - (term_min[f] ? *term_min[f] : 0);
        const std::int64_t slack = row.rhs - rest;  // c * y_f <= slack
        if (c > 0) {
          const std::int64_t ub = floor_div(slack, c);
          if (!hi[f] || ub < *hi[f]) {
            hi[f] = ub;
            changed = true;
          }
        } else {
          const std::int64_t lb = ceil_div(slack, c);
          if (!lo[f] || lb > *lo[f]) {
            lo[f] = lb;
            changed = true;
          }
        }
        if (lo[f] && hi[f] && *lo[f] > *hi[f]) return false;
      }
    }
    if (!changed) return true;
  }
  return true;
}

}  // namespace detail

/// Every integer point satisfying `sys` within `bounds` (one entry per
/// variable), sorted lexicographically. Throws UsageError if some free
/// direction stays unbounded after propagation.
inline std::vector<IntegerPoint> enumerate_integer_points(const ConstraintSystem& sys,
                                                          const std::vector<VariableBounds>& bounds,
                                                          const IntegerSearchOptions& opts = {}) {
  using detail::checked;
  const std::size_t nvars = sys.variables().size();
  if (bounds.size() != nvars) throw UsageError("one bound entry per variable is required");

  // Prefer tightly bounded variables as free variables: pivot on the loose
  // ones first.
  auto width = [&](std::size_t k) -> std::int64_t {
    if (!bounds[k].lower || !bounds[k].upper) return std::numeric_limits<std::int64_t>::max();
    return *bounds[k].upper - *bounds[k].lower;
  };
  std::vector<std::size_t> order(nvars);
  for (std::size_t k = 0; k < nvars; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return width(a) > width(b); });
  const ReducedEqualities red = reduce_equalities(sys, order);
  if (!red.consistent) return {};

  const std::size_t nf = red.free.size();
  std::vector<std::size_t> free_pos(nvars, nf);
  for (std::size_t f = 0; f < nf; ++f) free_pos[red.free[f]] = f;

  std::vector<detail::IntRow> rows;
  auto push_row = [&](const Rational& constant, const std::vector<Rational>& coeffs) {
    // constant + sum coeffs*y <= 0
    Integer scale;
    auto [c0, cs] = detail::clear_denominators(constant, coeffs, scale);
    detail::IntRow row;
    for (const auto& c : cs) row.coeffs.push_back(checked(c));
    row.rhs = checked(-c0);
    rows.push_back(std::move(row));
  };

  std::vector<detail::PivotRow> pivots;
  for (const auto& [p, expr] : red.solved) {
    std::vector<Rational> coeffs(nf, Rational(0));
    for (const auto& [k, c] : expr.terms) coeffs[free_pos[k]] = c;
    Integer scale;
    auto [c0, cs] = detail::clear_denominators(expr.constant, coeffs, scale);
    detail::PivotRow pr;
    pr.variable = p;
    pr.divisor = checked(scale);
    pr.constant = checked(c0);
    for (std::size_t f = 0; f < nf; ++f) {
      pr.coeffs.push_back(checked(cs[f]));
      if (cs[f] != 0) pr.last_depth = f;
    }
    pivots.push_back(std::move(pr));

    // lower <= expr <= upper, as "<= 0" rows.
    if (bounds[p].lower) {
      std::vector<Rational> neg(nf);
      for (std::size_t f = 0; f < nf; ++f) neg[f] = -coeffs[f];
      push_row(Rational(*bounds[p].lower) - expr.constant, neg);
    }
    if (bounds[p].upper) push_row(expr.constant - Rational(*bounds[p].upper), coeffs);
  }

  for (const auto& ineq : sys.inequalities()) {
    // Substitute pivots; normalize to "<= 0".
    Rational constant = -ineq.rhs;
    std::vector<Rational> coeffs(nf, Rational(0));
    for (std::size_t k = 0; k < nvars; ++k) {
      const Rational& a = ineq.coeffs[k];
      if (a == 0) continue;
      if (free_pos[k] < nf) {
        coeffs[free_pos[k]] += a;
      } else {
        const auto& expr = red.solved.at(k);
        constant += a * expr.constant;
        for (const auto& [j, c] : expr.terms) coeffs[free_pos[j]] += a * c;
      }
    }
    if (ineq.sense == Sense::kGreaterEqual) {
      constant = -constant;
      for (auto& c : coeffs) c = -c;
    }
    push_row(constant, coeffs);
  }

  std::vector<std::optional<std::int64_t>> lo(nf), hi(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    lo[f] = bounds[red.free[f]].lower;
    hi[f] = bounds[red.free[f]].upper;
  }
  if (!detail::propagate_bounds(rows, lo, hi)) return {};
  std::vector<std::int64_t> lo_v(nf), hi_v(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    if (!lo[f] || !hi[f])
      throw UsageError("unbounded search: variable '" + sys.variables()[red.free[f]] +
                       "' has no finite bound; supply search bounds");
    lo_v[f] = *lo[f];
    hi_v[f] = *hi[f];
    if (lo_v[f] > hi_v[f]) return {};
  }
  // Interval arithmetic inside the search must not overflow.
  for (const auto& row : rows) {
    Integer mag = abs(Integer(row.rhs));
    for (std::size_t f = 0; f < nf; ++f)
      mag += abs(Integer(row.coeffs[f])) *
             std::max(abs(Integer(lo_v[f])), abs(Integer(hi_v[f])));
    checked(mag);
  }

  const detail::Search search(std::move(rows), std::move(pivots), lo_v, hi_v);
  const unsigned nthreads = std::max(1u, opts.threads);
  std::vector<std::vector<std::vector<std::int64_t>>> parts(nthreads);
  if (nthreads == 1) {
    parts[0] = search.run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] { parts[t] = search.run(t, nthreads); });
    for (auto& th : pool) th.join();
  }

  std::vector<IntegerPoint> out;
  for (const auto& part : parts)
    for (const auto& y : part) {
      IntegerPoint x(nvars, 0);
      for (std::size_t f = 0; f < nf; ++f) x[red.free[f]] = y[f];
      for (const auto& pr : search.pivots()) {
        std::int64_t v = pr.constant;
        for (std::size_t f = 0; f < nf; ++f) v += pr.coeffs[f] * y[f];
        x[pr.variable] = v / pr.divisor;
      }
      out.push_back(std::move(x));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace k3fix
