#pragma once

// Classification of fixed-locus configurations: power-map compatibility
// (capacity) constraints plus exhaustive integer enumeration of everything
// the holomorphic and topological Lefschetz formulas allow.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3fix/errors.hpp"
#include "k3fix/integer_search.hpp"
#include "k3fix/lefschetz.hpp"
#include "k3fix/linear_system.hpp"
#include "k3fix/number_theory.hpp"

namespace k3fix {

/// Type of sigma^k at a point of type t of sigma. With d = gcd(I, k) the
/// power has order I/d and, relative to its own 2-form eigenvalue, local
/// exponents (i mod I/d, j mod I/d). A zero exponent means the image point
/// lies on a fixed curve of the power (returned as the (0,1) type).
inline PointType project_type(const PointType& t, std::int64_t k) {
  if (k < 1) throw UsageError("project_type: power must be >= 1");
  const std::int64_t target = t.order() / std::gcd(t.order(), k);
  if (target == 1)
    throw UsageError("project_type: sigma^" + std::to_string(k) + " is the identity");
  return PointType(target, t.i(), t.j());
}

/// Point types chosen either by explicit list or as the preimage of one
/// type of a power sigma^power.
struct TypeSelector {
  std::vector<PointType> types;
  std::optional<std::int64_t> power;
  std::optional<PointType> image;
};

struct Capacity {
  TypeSelector selector;
  std::int64_t bound = 0;
  Sense sense = Sense::kLessEqual;
  std::string source;
};

struct CurvePolicy {
  std::optional<std::int64_t> max_curves;
  std::optional<std::int64_t> genus_max;
  /// Fixes the curve data outright.
  std::optional<std::vector<std::int64_t>> exact_genera;
  /// Curves must form a sub-multiset of the curves of the named scenario's
  /// solutions (the fixed curves of a power of the automorphism).
  std::optional<std::string> contained_in;
};

struct SearchBounds {
  std::optional<std::int64_t> max_multiplicity = 24;
  std::optional<std::int64_t> g_sum_min = -21;
  std::optional<std::int64_t> g_sum_max = 12;
};

struct Scenario {
  std::string name;
  std::int64_t order = 2;
  std::int64_t q = 1;  // rk T = q * phi(order)
  std::int64_t trace_on_S = 0;
  std::optional<std::int64_t> rank_S;
  std::vector<Capacity> capacities;
  std::vector<TypeSelector> forced_zero;
  CurvePolicy curve_policy;
  SearchBounds bounds;
  std::string comment;
};

struct SolutionSet {
  std::vector<FixedLocusConfig> configs;
  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;
};

/// Supplies the curve lists of a named scenario's solutions.
using CurveResolver = std::function<std::vector<CurveContribution>(const std::string&)>;

struct EnumerationOptions {
  unsigned threads = 1;
  CurveResolver resolve_curves;
  /// Refuse curve expansions larger than this per solution.
  std::size_t max_curve_expansions = 100000;
};

inline void validate(const Scenario& s) {
  auto fail = [&](const std::string& what) {
    throw UsageError("scenario '" + s.name + "': " + what);
  };
  if (s.order < 2) fail("order must be >= 2");
  if (s.q < 1) fail("q must be >= 1");
  if (s.rank_S && (*s.rank_S < 0 || s.q * euler_totient(s.order) + *s.rank_S > 22))
    fail("q * phi(order) + rank_S exceeds 22");
  auto check_selector = [&](const TypeSelector& sel) {
    if (sel.power.has_value() != sel.image.has_value())
      fail("projection selector needs both power and image");
    if (sel.power && !sel.types.empty()) fail("selector mixes explicit types and projection");
    for (const auto& t : sel.types) {
      if (t.order() != s.order) fail("type " + t.str() + " has the wrong order");
      if (!t.is_isolated()) fail("type " + t.str() + " is not an isolated type");
    }
    if (sel.power) {
      const std::int64_t target = s.order / std::gcd(s.order, *sel.power);
      if (target == 1) fail("projection power gives the identity");
      if (sel.image->order() != target)
        fail("image " + sel.image->str() + " should have order " + std::to_string(target));
    }
  };
  for (const auto& c : s.capacities) {
    check_selector(c.selector);
    if (c.sense == Sense::kGreaterEqual) fail("capacity sense must be <= or =");
    if (c.bound < 0) fail("capacity bound must be non-negative");
  }
  for (const auto& z : s.forced_zero) check_selector(z);
  const auto& cp = s.curve_policy;
  if (cp.max_curves && *cp.max_curves < 0) fail("max_curves must be >= 0");
  if (cp.genus_max && *cp.genus_max < 0) fail("genus_max must be >= 0");
  if (cp.exact_genera)
    for (auto g : *cp.exact_genera)
      if (g < 0) fail("negative genus in exact_genera");
  if (s.bounds.max_multiplicity && *s.bounds.max_multiplicity < 0)
    fail("max_multiplicity must be >= 0");
}

/// Isolated types of order I picked out by a selector.
inline std::vector<PointType> resolve_selector(std::int64_t order, const TypeSelector& sel) {
  if (!sel.power) return sel.types;
  std::vector<PointType> out;
  for (const auto& t : isolated_types(order))
    if (project_type(t, *sel.power) == *sel.image) out.push_back(t);
  return out;
}

/// Rows sum_{t in group} m_t (sense) bound for every capacity, followed by
/// m_t = 0 for every forced-zero type, over the holomorphic system's
/// variables.
inline std::vector<LinearRow> capacity_constraints(const Scenario& s) {
  const auto types = isolated_types(s.order);
  const std::size_t nvars = types.size() + 1;
  auto index = [&](const PointType& t) {
    return static_cast<std::size_t>(std::find(types.begin(), types.end(), t) - types.begin());
  };
  std::vector<LinearRow> rows;
  for (const auto& cap : s.capacities) {
    LinearRow row{std::vector<Rational>(nvars, Rational(0)), cap.sense, Rational(cap.bound),
                  cap.source};
    for (const auto& t : resolve_selector(s.order, cap.selector)) row.coeffs[index(t)] += 1;
    rows.push_back(std::move(row));
  }
  std::set<PointType> zero;
  for (const auto& sel : s.forced_zero)
    for (const auto& t : resolve_selector(s.order, sel)) zero.insert(t);
  for (const auto& t : zero) {
    LinearRow row{std::vector<Rational>(nvars, Rational(0)), Sense::kEqual, Rational(0),
                  "forced zero " + variable_name(t)};
    row.coeffs[index(t)] = 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Capacities and forced zeros implied by a known fixed locus of
/// sigma^power: the points of sigma over an isolated type u of the power
/// number at most m_u, and none lie over types the power lacks.
inline std::pair<std::vector<Capacity>, std::vector<TypeSelector>> capacities_from_power(
    std::int64_t order, std::int64_t power, const FixedLocusConfig& power_locus) {
  std::vector<Capacity> caps;
  std::vector<TypeSelector> zeros;
  std::set<PointType> images;
  for (const auto& t : isolated_types(order)) {
    const PointType u = project_type(t, power);
    if (u.is_isolated()) images.insert(u);
  }
  for (const auto& u : images) {
    TypeSelector sel{{}, power, u};
    const std::int64_t m = power_locus.multiplicity(u);
    if (m == 0)
      zeros.push_back(sel);
    else
      caps.push_back({sel, m, Sense::kLessEqual, "points over " + u.str()});
  }
  return {caps, zeros};
}

namespace detail {

inline void sub_multisets(const std::vector<std::int64_t>& sorted, std::size_t pos,
                          std::vector<std::int64_t>& cur,
                          std::set<std::vector<std::int64_t>>& out) {
  if (pos == sorted.size()) {
    out.insert(cur);
    return;
  }
  std::size_t end = pos;
  while (end < sorted.size() && sorted[end] == sorted[pos]) ++end;
  for (std::size_t take = 0; take <= end - pos; ++take) {
    for (std::size_t k = 0; k < take; ++k) cur.push_back(sorted[pos]);
    sub_multisets(sorted, end, cur, out);
    cur.resize(cur.size() - take);
  }
}

/// Multisets of genera in [0, genus_max], at most max_curves of them, with
/// sum(1 - g) = g_sum. Genera are emitted in increasing order.
inline void genus_multisets(std::int64_t g_sum, std::int64_t max_curves, std::int64_t genus_max,
                            std::int64_t min_genus, std::vector<std::int64_t>& cur,
                            std::vector<std::vector<std::int64_t>>& out, std::size_t cap) {
  if (g_sum == 0) {
    out.push_back(cur);
    if (out.size() > cap) throw UsageError("curve policy admits too many curve configurations");
  }
  if (static_cast<std::int64_t>(cur.size()) == max_curves) return;
  const std::int64_t left = max_curves - static_cast<std::int64_t>(cur.size()) - 1;
  for (std::int64_t g = min_genus; g <= genus_max; ++g) {
    // Curves added after this one have genus in [g, genus_max].
    const std::int64_t rest = g_sum - (1 - g);
    const std::int64_t rest_max = std::max<std::int64_t>(0, left * (1 - g));
    const std::int64_t rest_min = std::min<std::int64_t>(0, left * (1 - genus_max));
    if (rest > rest_max || rest < rest_min) continue;
    cur.push_back(g);
    genus_multisets(rest, max_curves, genus_max, g, cur, out, cap);
    cur.pop_back();
  }
}

/// Candidate curve lists for a policy, or nullopt when the policy is given
/// only by count/genus limits (expanded lazily per g_sum).
inline std::optional<std::set<std::vector<std::int64_t>>> explicit_curve_candidates(
    const Scenario& s, const EnumerationOptions& opts) {
  const auto& cp = s.curve_policy;
  std::optional<std::set<std::vector<std::int64_t>>> out;
  if (cp.exact_genera) {
    auto g = *cp.exact_genera;
    std::sort(g.begin(), g.end());
    out = std::set<std::vector<std::int64_t>>{g};
  }
  if (cp.contained_in) {
    if (!opts.resolve_curves)
      throw UsageError("scenario '" + s.name + "' refers to '" + *cp.contained_in +
                       "' but no scenario resolver was supplied");
    std::set<std::vector<std::int64_t>> subs;
    for (const auto& container : opts.resolve_curves(*cp.contained_in)) {
      std::vector<std::int64_t> cur;
      sub_multisets(container.genera, 0, cur, subs);
    }
    if (out) {
      std::set<std::vector<std::int64_t>> both;
      std::set_intersection(out->begin(), out->end(), subs.begin(), subs.end(),
                            std::inserter(both, both.begin()));
      out = both;
    } else {
      out = subs;
    }
  }
  if (out) {
    // Count and genus limits still apply.
    std::set<std::vector<std::int64_t>> kept;
    for (const auto& g : *out) {
      if (cp.max_curves && static_cast<std::int64_t>(g.size()) > *cp.max_curves) continue;
      if (cp.genus_max && !g.empty() && g.back() > *cp.genus_max) continue;
      kept.insert(g);
    }
    out = kept;
  }
  return out;
}

inline std::int64_t g_sum_of(const std::vector<std::int64_t>& genera) {
  std::int64_t s = 0;
  for (auto g : genera) s += 1 - g;
  return s;
}

}  // namespace detail

/// Default limits for curve policies that name neither exact genera nor a
/// containing locus: at most 12 curves, genus at most 22.
inline constexpr std::int64_t kDefaultMaxCurves = 12;
inline constexpr std::int64_t kDefaultGenusMax = 22;

/// Full constraint system of a scenario: holomorphic equalities, capacity
/// rows, forced zeros, and sum m + 2 g_sum = chi.
inline ConstraintSystem scenario_system(const Scenario& s) {
  ConstraintSystem sys = build_holomorphic_system(s.order);
  for (auto& row : capacity_constraints(s)) sys.add(std::move(row));
  const std::size_t nvars = sys.variables().size();
  LinearRow euler{std::vector<Rational>(nvars, Rational(1)), Sense::kEqual,
                  Rational(euler_characteristic(s.order, s.trace_on_S, s.q)), "euler"};
  euler.coeffs.back() = 2;
  sys.add(std::move(euler));
  return sys;
}

namespace detail {

inline bool config_less(const FixedLocusConfig& a, const FixedLocusConfig& b) {
  const auto types = isolated_types(a.order);
  for (const auto& t : types) {
    const auto ma = a.multiplicity(t), mb = b.multiplicity(t);
    if (ma != mb) return ma < mb;
  }
  if (a.curves.g_sum() != b.curves.g_sum()) return a.curves.g_sum() < b.curves.g_sum();
  return a.curves < b.curves;
}

}  // namespace detail

/// Verifies a configuration against everything the scenario imposes, using
/// field arithmetic for the holomorphic equation rather than the linear
/// system the search ran on.
inline bool satisfies_scenario(const Scenario& s, const FixedLocusConfig& c) {
  if (c.order != s.order || !c.euler_consistent()) return false;
  if (c.euler != euler_characteristic(s.order, s.trace_on_S, s.q)) return false;
  if (!holomorphic_residual(c).is_zero()) return false;
  const auto types = isolated_types(s.order);
  std::vector<Rational> x;
  for (const auto& t : types) x.emplace_back(c.multiplicity(t));
  x.emplace_back(c.curves.g_sum());
  for (const auto& row : capacity_constraints(s))
    if (!row.satisfied_by(x)) return false;
  return true;
}

inline void sort_solutions(SolutionSet& set) {
  std::sort(set.configs.begin(), set.configs.end(), detail::config_less);
  set.configs.erase(std::unique(set.configs.begin(), set.configs.end()), set.configs.end());
}

/// Every configuration allowed by the scenario within its search bounds.
/// An infeasible scenario yields an empty set.
inline SolutionSet enumerate_configs(const Scenario& s, const EnumerationOptions& opts = {}) {
  validate(s);
  const ConstraintSystem sys = scenario_system(s);
  const auto types = isolated_types(s.order);
  const std::size_t nvars = sys.variables().size();

  const auto candidates = detail::explicit_curve_candidates(s, opts);
  const std::int64_t max_curves = s.curve_policy.max_curves.value_or(kDefaultMaxCurves);
  const std::int64_t genus_max = s.curve_policy.genus_max.value_or(kDefaultGenusMax);

  std::vector<VariableBounds> bounds(nvars);
  for (std::size_t k = 0; k + 1 < nvars; ++k) bounds[k] = {0, s.bounds.max_multiplicity};
  VariableBounds g{s.bounds.g_sum_min, s.bounds.g_sum_max};
  auto tighten = [&](std::int64_t lo, std::int64_t hi) {
    g.lower = g.lower ? std::max(*g.lower, lo) : lo;
    g.upper = g.upper ? std::min(*g.upper, hi) : hi;
  };
  if (candidates) {
    if (candidates->empty()) return {};
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& c : *candidates) {
      lo = std::min(lo, detail::g_sum_of(c));
      hi = std::max(hi, detail::g_sum_of(c));
    }
    tighten(lo, hi);
  } else {
    tighten(genus_max >= 1 ? max_curves * (1 - genus_max) : 0, max_curves);
  }
  bounds.back() = g;
  if (g.lower && g.upper && *g.lower > *g.upper) return {};

  IntegerSearchOptions search_opts;
  search_opts.threads = opts.threads;
  const auto points = enumerate_integer_points(sys, bounds, search_opts);

  const std::int64_t chi = euler_characteristic(s.order, s.trace_on_S, s.q);
  SolutionSet out;
  for (const auto& x : points) {
    const std::int64_t g_sum = x.back();
    std::vector<std::vector<std::int64_t>> curve_lists;
    if (candidates) {
      for (const auto& c : *candidates)
        if (detail::g_sum_of(c) == g_sum) curve_lists.push_back(c);
    } else {
      std::vector<std::int64_t> cur;
      detail::genus_multisets(g_sum, max_curves, genus_max, 0, cur, curve_lists,
                              opts.max_curve_expansions);
    }
    for (auto& genera : curve_lists) {
      FixedLocusConfig c;
      c.order = s.order;
      for (std::size_t k = 0; k < types.size(); ++k)
        if (x[k] != 0) c.points.emplace(types[k], x[k]);
      c.curves.genera = std::move(genera);
      c.euler = chi;
      if (!satisfies_scenario(s, c))
        throw InvariantError("enumerated configuration fails re-substitution in scenario '" +
                             s.name + "'");
      out.configs.push_back(std::move(c));
    }
  }
  sort_solutions(out);
  return out;
}

/// Scenarios addressable by name, so that curve containment can refer to
/// the classification of a power.
class ScenarioRegistry {
 public:
  void add(Scenario s) {
    const std::string key = s.name;
    scenarios_[key] = std::move(s);
  }
  bool contains(const std::string& name) const { return scenarios_.count(name) != 0; }
  const Scenario& get(const std::string& name) const {
    auto it = scenarios_.find(name);
    if (it == scenarios_.end()) throw UsageError("unknown scenario '" + name + "'");
    return it->second;
  }

  /// Enumerates `name`, resolving containment references recursively.
  SolutionSet enumerate(const std::string& name, unsigned threads = 1) const {
    std::vector<std::string> stack;
    return enumerate_impl(name, threads, stack);
  }

 private:
  SolutionSet enumerate_impl(const std::string& name, unsigned threads,
                             std::vector<std::string>& stack) const {
    if (std::find(stack.begin(), stack.end(), name) != stack.end())
      throw UsageError("cyclic curve containment involving '" + name + "'");
    stack.push_back(name);
    EnumerationOptions opts;
    opts.threads = threads;
    opts.resolve_curves = [&](const std::string& other) {
      std::vector<CurveContribution> curves;
      for (const auto& c : enumerate_impl(other, threads, stack).configs)
        curves.push_back(c.curves);
      return curves;
    };
    SolutionSet out = enumerate_configs(get(name), opts);
    stack.pop_back();
    return out;
  }

  std::map<std::string, Scenario> scenarios_;
};

// ---------------------------------------------------------------------------
// Tightness of capacity sums in the order-42 classification.

struct TightnessTarget {
  std::vector<PointType> types;
  std::int64_t value = 0;
  std::string label;
};

struct TightnessEntry {
  TightnessTarget target;
  std::vector<std::int64_t> observed;  // the sum in each solution
  bool holds = true;                   // equal to target in every solution
};

struct TightnessReport {
  std::size_t solution_count = 0;
  std::vector<TightnessEntry> entries;
  bool all_hold() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const TightnessEntry& e) { return e.holds; });
  }
};

/// m(i, 43-i) + m(22-i, 21+i) equals 3, 2, 1, 1, 1, 1 for i = 2..7.
inline std::vector<TightnessTarget> order42_tightness_targets() {
  const std::int64_t values[] = {3, 2, 1, 1, 1, 1};
  std::vector<TightnessTarget> out;
  for (std::int64_t i = 2; i <= 7; ++i) {
    const PointType a(42, i, 43 - i), b(42, 22 - i, 21 + i);
    out.push_back({{a, b}, values[i - 2],
                   variable_name(a) + " + " + variable_name(b) + " = " +
                       std::to_string(values[i - 2])});
  }
  return out;
}

inline TightnessReport check_tightness(const SolutionSet& set,
                                       const std::vector<TightnessTarget>& targets) {
  TightnessReport rep;
  rep.solution_count = set.configs.size();
  for (const auto& t : targets) {
    TightnessEntry e{t, {}, true};
    for (const auto& c : set.configs) {
      std::int64_t sum = 0;
      for (const auto& p : t.types) sum += c.multiplicity(p);
      e.observed.push_back(sum);
      if (sum != t.value) e.holds = false;
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

/// Enumerates an order-42 scenario and checks the six equalities on every
/// surviving configuration.
inline TightnessReport verify_equalities_42(const Scenario& s, const EnumerationOptions& opts = {}) {
  if (s.order != 42) throw UsageError("verify_equalities_42 needs an order-42 scenario");
  return check_tightness(enumerate_configs(s, opts), order42_tightness_targets());
}

}  // namespace k3fix
