#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "k3fix/k3fix.hpp"

namespace k3fix::testing {

// Fixed seeds keep the random suites reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  Rational rational(std::int64_t height) {
    const std::int64_t num = integer(-height, height);
    const std::int64_t den = integer(1, height);
    return Rational(num, den);
  }

  CyclotomicNumber cyclotomic(std::int64_t n, std::int64_t height = 20) {
    std::vector<Rational> c;
    for (std::int64_t k = 0; k < euler_totient(n); ++k)
      c.push_back(integer(0, 3) == 0 ? Rational(0) : rational(height));
    return CyclotomicNumber(n, std::move(c));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::string scenario_path(const std::string& name) {
  return std::string(K3FIX_SCENARIO_DIR) + "/" + name + ".json";
}

inline ScenarioRegistry shipped_registry() {
  ScenarioRegistry reg;
  for (const char* n : {"order7", "order21", "order42"}) reg.add(load_scenario(scenario_path(n)));
  return reg;
}

/// Builds a config of the given order from (i, j, m) triples and genera.
inline FixedLocusConfig make_config(std::int64_t order,
                                    const std::vector<std::array<std::int64_t, 3>>& pts,
                                    std::vector<std::int64_t> genera, std::int64_t euler) {
  FixedLocusConfig c;
  c.order = order;
  for (auto [i, j, m] : pts) c.points[PointType(order, i, j)] = m;
  c.curves.genera = std::move(genera);
  c.euler = euler;
  return c;
}

}  // namespace k3fix::testing
