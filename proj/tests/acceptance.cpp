// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "k3fix/k3fix.hpp"

using namespace k3fix;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

std::string path(const std::string& name) {
  return std::string(K3FIX_SCENARIO_DIR) + "/" + name + ".json";
}

ScenarioRegistry registry() {
  ScenarioRegistry reg;
  for (const char* n : {"order7", "order21", "order42"}) reg.add(load_scenario(path(n)));
  return reg;
}

FixedLocusConfig config(std::int64_t order, std::vector<std::array<std::int64_t, 3>> pts,
                        std::int64_t euler) {
  FixedLocusConfig c;
  c.order = order;
  for (auto [i, j, m] : pts) c.points[PointType(order, i, j)] = m;
  c.curves.genera = {0};
  c.euler = euler;
  return c;
}

void trace_reproduction(Check& c) {
  c.require(primitive_trace(21) == 1, "primitive_trace(21) != 1");
  c.require(primitive_trace(42) == -1, "primitive_trace(42) != -1");
}

void euler_characteristics(Check& c) {
  c.require(euler_characteristic(21, 10, 1) == 13, "chi(21) != 13");
  c.require(euler_characteristic(42, 10, 1) == 11, "chi(42) != 11");
}

void order21_relations(Check& c) {
  const auto sys = build_holomorphic_system(21);
  const auto solved = solve_for(sys, {"m(2,20)", "m(3,19)", "m(4,18)", "m(5,17)", kGSumVariable});
  const std::map<std::string, std::string> expected = {
      {"m(6,16)", "m(6,16) = -1/2*m(2,20) - 1/2*m(3,19) + 1/2*m(5,17) + 3*g_sum"},
      {"m(7,15)", "m(7,15) = 1 - 3*m(3,19) + 8*g_sum"},
      {"m(8,14)", "m(8,14) = 1 - 9/2*m(2,20) - 3/2*m(3,19) - 3/2*m(5,17) + 17*g_sum"},
      {"m(9,13)", "m(9,13) = 1 - 5*m(2,20) - m(3,19) - 2*m(5,17) + 18*g_sum"},
      {"m(10,12)",
       "m(10,12) = 3 - 15/2*m(2,20) + 1/2*m(3,19) - 3*m(4,18) + 1/2*m(5,17) + 21*g_sum"},
      {"m(11,11)", "m(11,11) = 1 - 3*m(2,20) - m(4,18) + 9*g_sum"},
  };
  c.require(solved.size() == expected.size(), "expected six dependent variables");
  for (const auto& [name, text] : expected) {
    auto it = solved.find(name);
    c.require(it != solved.end(), name + " is not dependent");
    if (it != solved.end())
      c.require(format_affine(name, it->second, sys.variables()) == text, "mismatch in " + name);
  }
}

void order21_classification(Check& c) {
  const auto set = registry().enumerate("order21");
  c.require(set.configs.size() == 1, "expected exactly one configuration");
  if (set.configs.size() != 1) return;
  const auto expect =
      config(21, {{2, 20, 3}, {3, 19, 2}, {4, 18, 1}, {5, 17, 1}, {6, 16, 1}, {7, 15, 3}}, 13);
  c.require(set.configs[0] == expect, "configuration differs");
  c.require(set.configs[0].isolated_count() == 11, "M != 11");
}

void order42_classification(Check& c) {
  const auto set = registry().enumerate("order42");
  c.require(set.configs.size() == 1, "expected exactly one configuration");
  if (set.configs.size() != 1) return;
  const auto expect =
      config(42, {{2, 41, 3}, {3, 40, 2}, {4, 39, 1}, {5, 38, 1}, {6, 37, 1}, {7, 36, 1}}, 11);
  c.require(set.configs[0] == expect, "configuration differs");
  const auto rep = check_tightness(set, order42_tightness_targets());
  c.require(rep.entries.size() == 6 && rep.all_hold(), "an order-42 equality is not tight");
}

void order7_consistency(Check& c) {
  const auto set = registry().enumerate("order7");
  c.require(set.configs.size() == 1, "expected exactly one configuration");
  if (set.configs.size() != 1) return;
  const auto& cfg = set.configs[0];
  c.require(cfg.isolated_count() == 13, "M != 13");
  c.require(cfg.curves.genera == std::vector<std::int64_t>{0, 0}, "expected two rational curves");
  // brute force over triples with sum <= 24
  const auto one = CyclotomicNumber::from_rational(7, 1);
  auto term = [&](std::int64_t i, std::int64_t j) {
    return ((one - root_power(7, i)) * (one - root_power(7, j))).inverse();
  };
  const auto z = root_power(7, 1);
  const auto curves = Rational(2) * (one + z) / ((one - z) * (one - z));
  std::vector<std::array<std::int64_t, 3>> hits;
  for (std::int64_t a = 0; a <= 24; ++a)
    for (std::int64_t b = 0; a + b <= 24; ++b)
      for (std::int64_t d = 0; a + b + d <= 24; ++d)
        if (a + b + d + 4 == 17 &&
            Rational(a) * term(2, 6) + Rational(b) * term(3, 5) + Rational(d) * term(4, 4) +
                    curves == one + root_power(7, 6))
          hits.push_back({a, b, d});
  c.require(hits.size() == 1, "triple oracle does not find a unique solution");
  if (hits.size() == 1)
    c.require(cfg.multiplicity(PointType(7, 2, 6)) == hits[0][0] &&
                  cfg.multiplicity(PointType(7, 3, 5)) == hits[0][1] &&
                  cfg.multiplicity(PointType(7, 4, 4)) == hits[0][2],
              "type distribution disagrees with the triple oracle");
}

void rank_deduction(Check& c) {
  const auto r = deduce_ranks({7, 16, 22});
  c.require(r.unique && r.rank_T == 6 && r.rank_S == 16, "rank_T != 6");
  c.require(r.action_on_S_forced_trivial, "action not forced trivial");
}

void weierstrass_checks(Check& c) {
  const MonomialWeierstrass ko({{1, 3, 0, 0}, {1, 1, 0, 3}, {1, 0, 0, 8}});
  const MonomialWeierstrass oz({{1, 3, 0, 0}, {1, 1, 0, 5}, {1, 0, 0, 4}});
  const DiagonalAction a(7, 3, 1, 2), b(7, 3, 1, 4);
  c.require(check_invariance(ko, a).invariant, "X_Ko not invariant");
  c.require(check_invariance(oz, b).invariant, "X_OZ not invariant");
  c.require(two_form_weight(a).primitive && two_form_weight(b).primitive,
            "2-form weight is not a unit mod 7");
}

int mobius_by_trial_division(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

void property_suites(Check& c) {
  std::mt19937_64 rng(20261018);
  auto rnd = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  auto sample = [&](std::int64_t n, std::int64_t h) {
    std::vector<Rational> v;
    for (std::int64_t k = 0; k < euler_totient(n); ++k) v.emplace_back(rnd(-h, h), rnd(1, h));
    return CyclotomicNumber(n, v);
  };
  const std::int64_t conductors[] = {3, 7, 12, 21, 42};
  for (int k = 0; k < 1000 && c.ok; ++k) {
    const std::int64_t n = conductors[rnd(0, 4)];
    const auto a = sample(n, 20), b = sample(n, 20), d = sample(n, 20);
    c.require((a * b) * d == a * (b * d) && a * b == b * a && a + b == b + a &&
                  (a + b) + d == a + (b + d) && a * (b + d) == a * b + a * d,
              "field axiom failure");
    if (!a.is_zero()) c.require(a * a.inverse() == CyclotomicNumber::from_rational(n, 1),
                                "a * a^-1 != 1");
    for (std::int64_t e = 1; e < n; ++e) {
      if (std::gcd(e, n) != 1) continue;
      const auto lhs = (a * b).embed(e), rhs = a.embed(e) * b.embed(e);
      c.require(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)),
                "embedding disagreement");
    }
  }
  for (std::int64_t n = 1; n <= 100; ++n) {
    c.require(primitive_trace(n) == mobius_by_trial_division(n),
              "primitive_trace != mu at n=" + std::to_string(n));
    IntPolynomial prod(std::vector<Integer>{1});
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic_polynomial(d);
    std::vector<Integer> target(static_cast<std::size_t>(n + 1), Integer(0));
    target.front() = -1;
    target.back() = 1;
    c.require(prod == IntPolynomial(target), "Phi product identity fails at n=" + std::to_string(n));
  }
  auto reg = registry();
  for (const char* name : {"order7", "order21", "order42"}) {
    const Scenario& s = reg.get(name);
    const auto sys = scenario_system(s);
    for (const auto& cfg : reg.enumerate(name).configs) {
      std::vector<Rational> x;
      for (const auto& t : isolated_types(s.order)) x.emplace_back(cfg.multiplicity(t));
      x.emplace_back(cfg.curves.g_sum());
      c.require(sys.satisfied_by(x) && cfg.euler_consistent() &&
                    holomorphic_residual(cfg).is_zero(),
                std::string("re-substitution fails in ") + name);
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"trace reproduction", 1, trace_reproduction},
      {"Euler characteristics", 1, euler_characteristics},
      {"order-21 equation system", 5, order21_relations},
      {"order-21 classification", 60, order21_classification},
      {"order-42 classification and tightness", 60, order42_classification},
      {"order-7 consistency", 10, order7_consistency},
      {"rank deduction", 1, rank_deduction},
      {"Weierstrass checks", 1, weierstrass_checks},
      {"property suites", 600, property_suites},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[k].run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < criteria[k].limit_seconds, "over the time limit");
    failures += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << "  " << k + 1 << ". " << criteria[k].name << "  ("
              << std::fixed << std::setprecision(3) << secs << " s)";
    if (!c.ok) std::cout << "  " << c.why;
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
