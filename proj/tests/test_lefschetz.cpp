#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "support.hpp"

using namespace k3fix;
using k3fix::testing::Gen;
using k3fix::testing::make_config;

namespace {

std::complex<double> zeta(std::int64_t n, std::int64_t k) {
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

// Plain fraction-free rank, independent of reduce_equalities.
std::size_t rank_oracle(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<Rational> assignment(const ConstraintSystem& sys,
                                 const std::map<std::string, std::int64_t>& values) {
  std::vector<Rational> x(sys.variables().size(), Rational(0));
  for (const auto& [name, v] : values) x[sys.index_of(name)] = v;
  return x;
}

}  // namespace

TEST(PointType, Canonicalization) {
  const PointType t(21, 20, 2);
  EXPECT_EQ(t.i(), 2);
  EXPECT_EQ(t.j(), 20);
  EXPECT_EQ(t, PointType(21, 2, -1));
  EXPECT_TRUE(t.is_isolated());
  EXPECT_FALSE(PointType::curve_point(7).is_isolated());
  EXPECT_THROW(PointType(21, 8, 19), UsageError);
  EXPECT_EQ(isolated_types(21).size(), 10u);
  EXPECT_EQ(isolated_types(42).size(), 20u);
  EXPECT_EQ(isolated_types(7).size(), 3u);
}

TEST(PointTerm, Examples) {
  const auto a = point_term(PointType(7, 2, 6));
  for (std::int64_t k = 1; k < 7; ++k) {
    const auto expect = 1.0 / ((1.0 - zeta(7, 2 * k)) * (1.0 - zeta(7, 6 * k)));
    EXPECT_LT(std::abs(a.embed(k) - expect), 1e-9);
  }
  const auto one = CyclotomicNumber::from_rational(7, 1);
  const auto inv = (one - root_power(7, 4)).inverse();
  EXPECT_EQ(point_term(PointType(7, 4, 4)), inv * inv);
  EXPECT_THROW(point_term(PointType::curve_point(7)), UsageError);
}

TEST(PointTerm, EmbeddingAndGaloisSumForOrders3To42) {
  for (std::int64_t n = 3; n <= 42; ++n) {
    for (const auto& t : isolated_types(n)) {
      const auto a = point_term(t);
      CyclotomicNumber sum(n);
      for (std::int64_t k = 1; k < n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        const auto expect = 1.0 / ((1.0 - zeta(n, t.i() * k)) * (1.0 - zeta(n, t.j() * k)));
        ASSERT_LT(std::abs(a.embed(k) - expect), 1e-9 * std::max(1.0, std::abs(expect)))
            << "n=" << n << " " << t.str();
        sum = sum + a.conjugate(k);
      }
      ASSERT_TRUE(sum.is_rational()) << "n=" << n << " " << t.str();
      ASSERT_EQ(rational_coordinates(sum)[0], a.galois_trace());
    }
  }
}

TEST(CurveTerm, Embedding) {
  const auto c = curve_unit_term(21);
  const auto z = zeta(21, 1);
  EXPECT_LT(std::abs(c.embed(1) - (1.0 + z) / ((1.0 - z) * (1.0 - z))), 1e-9);
  EXPECT_THROW(curve_unit_term(1), UsageError);
}

TEST(CurveTerm, SelfIntersectionIdentity) {
  for (std::int64_t n : {3, 7, 21, 42}) {
    const auto one = CyclotomicNumber::from_rational(n, 1);
    const auto z = root_power(n, 1);
    const auto u = (one - z).inverse();
    for (std::int64_t g : {0, 1, 2}) {
      // b(C) = (1-g)/(1-z) - z C^2/(1-z)^2 with C^2 = 2g - 2
      const auto b = Rational(1 - g) * u - Rational(2 * g - 2) * (z * u * u);
      EXPECT_EQ(b, Rational(1 - g) * curve_unit_term(n)) << "n=" << n << " g=" << g;
    }
  }
  // A genus-1 curve contributes nothing.
  const auto c = make_config(7, {}, {1}, 0);
  EXPECT_EQ(holomorphic_residual(c), holomorphic_lhs(7));
}

TEST(HolomorphicLhs, Examples) {
  EXPECT_EQ(holomorphic_lhs(21), CyclotomicNumber::from_rational(21, 1) + root_power(21, 20));
  EXPECT_EQ(holomorphic_lhs(42), CyclotomicNumber::from_rational(42, 1) + root_power(42, 41));
  EXPECT_TRUE(holomorphic_lhs(2).is_zero());
  EXPECT_THROW(holomorphic_lhs(1), UsageError);
}

TEST(HolomorphicSystem, Order21Relations) {
  const auto sys = build_holomorphic_system(21);
  EXPECT_EQ(sys.equalities().size(), 12u);
  const auto solved =
      solve_for(sys, {"m(2,20)", "m(3,19)", "m(4,18)", "m(5,17)", kGSumVariable});
  ASSERT_EQ(solved.size(), 6u);
  const auto& v = sys.variables();
  auto at = [&](const std::string& n) { return sys.index_of(n); };
  auto expr = [&](Rational c, std::vector<std::pair<std::string, Rational>> terms) {
    AffineExpression e;
    e.constant = c;
    for (auto& [n, k] : terms) e.terms[at(n)] = k;
    return e;
  };
  const std::string m2 = "m(2,20)", m3 = "m(3,19)", m4 = "m(4,18)", m5 = "m(5,17)",
                    g = kGSumVariable;
  const std::map<std::string, AffineExpression> expected = {
      {"m(6,16)", expr(0, {{m2, Rational(-1, 2)}, {m3, Rational(-1, 2)}, {m5, Rational(1, 2)},
                           {g, 3}})},
      {"m(7,15)", expr(1, {{m3, -3}, {g, 8}})},
      {"m(8,14)", expr(1, {{m2, Rational(-9, 2)}, {m3, Rational(-3, 2)}, {m5, Rational(-3, 2)},
                           {g, 17}})},
      {"m(9,13)", expr(1, {{m2, -5}, {m3, -1}, {m5, -2}, {g, 18}})},
      {"m(10,12)", expr(3, {{m2, Rational(-15, 2)}, {m3, Rational(1, 2)}, {m4, -3},
                            {m5, Rational(1, 2)}, {g, 21}})},
      {"m(11,11)", expr(1, {{m2, -3}, {m4, -1}, {g, 9}})},
  };
  for (const auto& [name, e] : expected) {
    ASSERT_TRUE(solved.count(name)) << name;
    EXPECT_EQ(solved.at(name).constant, e.constant) << name;
    EXPECT_EQ(solved.at(name).terms, e.terms) << format_affine(name, solved.at(name), v);
  }
}

TEST(HolomorphicSystem, KnownSolutionsSatisfyEveryEquality) {
  const auto s21 = build_holomorphic_system(21);
  auto x21 = assignment(s21, {{"m(2,20)", 3}, {"m(3,19)", 2}, {"m(4,18)", 1}, {"m(5,17)", 1},
                              {"m(6,16)", 1}, {"m(7,15)", 3}, {kGSumVariable, 1}});
  EXPECT_TRUE(s21.satisfied_by(x21));
  x21[0] += 1;
  EXPECT_FALSE(s21.satisfied_by(x21));

  const auto s42 = build_holomorphic_system(42);
  const auto x42 = assignment(s42, {{"m(2,41)", 3}, {"m(3,40)", 2}, {"m(4,39)", 1},
                                    {"m(5,38)", 1}, {"m(6,37)", 1}, {"m(7,36)", 1},
                                    {kGSumVariable, 1}});
  EXPECT_TRUE(s42.satisfied_by(x42));
}

TEST(HolomorphicSystem, Order7RankAndSolution) {
  const auto sys = build_holomorphic_system(7);
  EXPECT_EQ(sys.variables().size(), 4u);
  EXPECT_EQ(sys.equalities().size(), 6u);
  std::vector<std::vector<Rational>> aug;
  for (const auto& r : sys.equalities()) {
    aug.push_back(r.coeffs);
    aug.back().push_back(r.rhs);
  }
  std::vector<std::vector<Rational>> coeffs;
  for (const auto& r : sys.equalities()) coeffs.push_back(r.coeffs);
  const std::size_t rank = rank_oracle(coeffs);
  EXPECT_EQ(rank, 3u);
  EXPECT_EQ(rank_oracle(aug), rank);  // consistent
  EXPECT_EQ(reduce_equalities(sys).rank, rank);

  const auto solved = solve_for(sys, {kGSumVariable});
  EXPECT_EQ(format_affine("m(2,6)", solved.at("m(2,6)"), sys.variables()),
            "m(2,6) = 2 + 2*g_sum");
  EXPECT_EQ(format_affine("m(3,5)", solved.at("m(3,5)"), sys.variables()),
            "m(3,5) = 1 + 2*g_sum");
  EXPECT_EQ(format_affine("m(4,4)", solved.at("m(4,4)"), sys.variables()), "m(4,4) = g_sum");
}

TEST(HolomorphicSystem, LinearRowsMatchFieldResidual) {
  // The rows are the power-basis coordinates of the field equation, so both
  // routes must agree on every assignment.
  Gen gen(0x7e57);
  for (std::int64_t n : {5, 7, 9, 12, 21}) {
    const auto sys = build_holomorphic_system(n);
    const auto types = isolated_types(n);
    for (int round = 0; round < 40; ++round) {
      FixedLocusConfig c;
      c.order = n;
      std::vector<Rational> x;
      for (const auto& t : types) {
        const auto m = gen.integer(0, 3);
        if (m) c.points[t] = m;
        x.emplace_back(m);
      }
      const auto g = gen.integer(-2, 2);
      for (std::int64_t k = 0; k < std::abs(g); ++k) c.curves.genera.push_back(g > 0 ? 0 : 2);
      x.emplace_back(g);
      const auto residual = rational_coordinates(holomorphic_residual(c));
      for (std::size_t r = 0; r < sys.equalities().size(); ++r) {
        const auto& row = sys.equalities()[r];
        ASSERT_EQ(row.rhs - row.evaluate(x), residual[r]);
      }
    }
  }
}

TEST(Traces, Examples) {
  EXPECT_EQ(transcendental_trace(21, 1), 1);
  EXPECT_EQ(transcendental_trace(42, 1), -1);
  EXPECT_EQ(transcendental_trace(7, 2), -2);
  EXPECT_THROW(transcendental_trace(7, 0), UsageError);
  EXPECT_EQ(euler_characteristic(21, 10, 1), 13);
  EXPECT_EQ(euler_characteristic(42, 10, 1), 11);
  EXPECT_EQ(euler_characteristic(7, 16, 1), 17);
  // 13 points and two rational curves
  EXPECT_EQ(euler_characteristic(7, 16, 1), 13 + 2 * 2);
}

TEST(FixedLocusConfig, EulerConsistency) {
  const auto c = make_config(21, {{2, 20, 3}, {3, 19, 2}, {4, 18, 1}, {5, 17, 1}, {6, 16, 1},
                                  {7, 15, 3}},
                             {0}, 13);
  EXPECT_EQ(c.isolated_count(), 11);
  EXPECT_TRUE(c.euler_consistent());
  EXPECT_TRUE(holomorphic_residual(c).is_zero());
}
