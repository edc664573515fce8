#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "k3fix/errors.hpp"

namespace k3fix {

/// Prime factorization by trial division, as (prime, exponent) pairs.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw UsageError("factorize: n must be positive");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::int64_t euler_totient(std::int64_t n) {
  std::int64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

inline int moebius(std::int64_t n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// Positive divisors in increasing order.
inline std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw UsageError("divisors: n must be positive");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Least non-negative residue of a modulo n.
inline std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline bool is_unit_mod(std::int64_t a, std::int64_t n) {
  return std::gcd(mod_floor(a, n), n) == 1;
}

}  // namespace k3fix
