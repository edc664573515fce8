#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "support.hpp"

using namespace k3fix;
using k3fix::testing::Gen;

namespace {

// Trial-division Moebius, kept apart from the library's factorize().
int mobius_oracle(std::int64_t n) {
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::int64_t totient_oracle(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

std::complex<double> zeta(std::int64_t n, std::int64_t k) {
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
}

bool close(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

std::vector<Rational> ints(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(CyclotomicPolynomial, SmallCases) {
  EXPECT_EQ(cyclotomic_polynomial(1), IntPolynomial({-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(7), IntPolynomial({1, 1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(21).degree(), 12);
}

TEST(CyclotomicPolynomial, Order21Product) {
  const auto prod = cyclotomic_polynomial(21) * cyclotomic_polynomial(7) *
                    cyclotomic_polynomial(3) * cyclotomic_polynomial(1);
  std::vector<Integer> c(22, Integer(0));
  c[0] = -1;
  c[21] = 1;
  EXPECT_EQ(prod, IntPolynomial(c));
}

TEST(CyclotomicPolynomial, DivisorProductIdentityUpTo100) {
  for (std::int64_t n = 1; n <= 100; ++n) {
    IntPolynomial prod({1});
    std::int64_t phi_sum = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      prod = prod * cyclotomic_polynomial(d);
      phi_sum += totient_oracle(d);
    }
    std::vector<Integer> c(static_cast<std::size_t>(n + 1), Integer(0));
    c.front() = -1;
    c.back() = 1;
    EXPECT_EQ(prod, IntPolynomial(c)) << "n=" << n;
    EXPECT_EQ(phi_sum, n);
    EXPECT_EQ(euler_totient(n), totient_oracle(n));
  }
}

TEST(PrimitiveTrace, KnownValues) {
  EXPECT_EQ(primitive_trace(21), 1);
  EXPECT_EQ(primitive_trace(42), -1);
  EXPECT_EQ(primitive_trace(1), 1);
}

TEST(PrimitiveTrace, EqualsMoebiusUpTo100) {
  for (std::int64_t n = 1; n <= 100; ++n) {
    EXPECT_EQ(primitive_trace(n), mobius_oracle(n)) << "n=" << n;
    double s = 0;
    for (std::int64_t k = 1; k <= n; ++k)
      if (std::gcd(k, n) == 1) s += zeta(n, k).real();
    EXPECT_NEAR(s, static_cast<double>(mobius_oracle(n)), 1e-9);
  }
}

TEST(RootPower, Examples) {
  EXPECT_EQ(root_power(7, 0), CyclotomicNumber::from_rational(7, 1));
  EXPECT_EQ(rational_coordinates(root_power(7, 6)), ints({-1, -1, -1, -1, -1, -1}));
  EXPECT_EQ(root_power(21, 22), root_power(21, 1));
  EXPECT_EQ(root_power(21, -1), root_power(21, 20));
}

TEST(RationalCoordinates, Examples) {
  EXPECT_EQ(rational_coordinates(CyclotomicNumber(7)), ints({0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(rational_coordinates(root_power(7, 1)), ints({0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(rational_coordinates(root_power(7, 0) + root_power(7, 6)),
            ints({0, -1, -1, -1, -1, -1}));
}

TEST(FieldOps, Examples) {
  const auto one = CyclotomicNumber::from_rational(7, 1);
  const auto a = one - root_power(7, 1);
  EXPECT_EQ(a.inverse() * a, one);
  EXPECT_EQ(root_power(7, 3) * root_power(7, 5), root_power(7, 1));

  const auto one21 = CyclotomicNumber::from_rational(21, 1);
  const auto b = ((one21 - root_power(21, 2)) * (one21 - root_power(21, 20))).inverse();
  for (std::int64_t k = 1; k < 21; ++k) {
    if (std::gcd(k, std::int64_t{21}) != 1) continue;
    const auto expect = 1.0 / ((1.0 - zeta(21, 2 * k)) * (1.0 - zeta(21, 20 * k)));
    EXPECT_TRUE(close(b.embed(k), expect)) << "k=" << k;
  }
}

TEST(FieldOps, Errors) {
  EXPECT_THROW(root_power(7, 1) + root_power(21, 1), UsageError);
  EXPECT_THROW(CyclotomicNumber(7).inverse(), ArithmeticError);
  EXPECT_THROW(CyclotomicNumber(7, ints({1, 2})), UsageError);
}

TEST(FieldOps, AxiomsOnRandomSamples) {
  Gen gen(0x5eed0001);
  const std::int64_t conductors[] = {3, 5, 7, 8, 12, 21, 42};
  int checked = 0;
  for (int round = 0; round < 1200; ++round) {
    const std::int64_t n = conductors[gen.integer(0, 6)];
    const auto a = gen.cyclotomic(n), b = gen.cyclotomic(n), c = gen.cyclotomic(n);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE((a - a).is_zero());
    if (!a.is_zero()) ASSERT_EQ(a * a.inverse(), CyclotomicNumber::from_rational(n, 1));
    ++checked;
  }
  EXPECT_GE(checked, 1000);
}

TEST(FieldOps, EmbeddingAgreement) {
  Gen gen(0x5eed0002);
  const std::int64_t conductors[] = {5, 7, 9, 21, 42};
  for (int round = 0; round < 300; ++round) {
    const std::int64_t n = conductors[gen.integer(0, 4)];
    const auto a = gen.cyclotomic(n, 1000), b = gen.cyclotomic(n, 1000);
    // Inverses of height-1000 elements are slow in degree 12; sample fewer.
    const bool divide = !b.is_zero() && round % 10 == 0;
    const auto q = divide ? a / b : a;
    for (std::int64_t k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      ASSERT_TRUE(close((a + b).embed(k), a.embed(k) + b.embed(k)));
      ASSERT_TRUE(close((a * b).embed(k), a.embed(k) * b.embed(k)));
      if (divide) ASSERT_TRUE(close(q.embed(k), a.embed(k) / b.embed(k)));
      ASSERT_TRUE(close(a.conjugate(k).embed(1), a.embed(k)));
    }
  }
}

TEST(FieldOps, GaloisTraceOfPowers) {
  // Tr(zeta^k) is the Ramanujan sum c_n(k).
  for (std::int64_t n : {7, 12, 21, 42}) {
    for (std::int64_t k = 0; k < n; ++k) {
      double s = 0;
      for (std::int64_t r = 1; r <= n; ++r)
        if (std::gcd(r, n) == 1) s += zeta(n, r * k).real();
      EXPECT_EQ(root_power(n, k).galois_trace(), Rational(std::llround(s)));
    }
  }
}
