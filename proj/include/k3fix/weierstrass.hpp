#pragma once

// Diagonal automorphisms (x, y, t) -> (z^wx x, z^wy y, z^wt t), z = zeta_n,
// of monomial Weierstrass models y^2 = x^3 + sum a * x^alpha * t^beta.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "k3fix/errors.hpp"
#include "k3fix/number_theory.hpp"

namespace k3fix {

struct Monomial {
  std::int64_t coefficient = 1;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t t = 0;

  std::string str() const {
    std::string s;
    auto var = [&](const char* v, std::int64_t e) {
      if (e == 0) return;
      s += v;
      if (e > 1) s += "^" + std::to_string(e);
    };
    if (coefficient != 1 || (x == 0 && y == 0 && t == 0)) s += std::to_string(coefficient);
    var("x", x);
    var("y", y);
    var("t", t);
    return s;
  }
};

/// y^2 = x^3 + (rest of the right-hand side).
class MonomialWeierstrass {
 public:
  explicit MonomialWeierstrass(std::vector<Monomial> rhs) : rhs_(std::move(rhs)) {
    bool has_cube = false;
    for (const auto& m : rhs_) {
      if (m.x < 0 || m.y < 0 || m.t < 0) throw UsageError("negative exponent in " + m.str());
      if (m.coefficient == 0) throw UsageError("zero coefficient monomial");
      if (m.x == 3 && m.y == 0 && m.t == 0) has_cube = true;
    }
    if (!has_cube) throw UsageError("right-hand side must contain x^3");
  }

  const std::vector<Monomial>& rhs() const { return rhs_; }

  std::string str() const {
    std::string s = "y^2 =";
    for (std::size_t k = 0; k < rhs_.size(); ++k) s += (k ? " + " : " ") + rhs_[k].str();
    return s;
  }

 private:
  std::vector<Monomial> rhs_;
};

class DiagonalAction {
 public:
  DiagonalAction(std::int64_t order, std::int64_t wx, std::int64_t wy, std::int64_t wt)
      : order_(order) {
    if (order < 1) throw UsageError("diagonal action: order must be >= 1");
    wx_ = mod_floor(wx, order);
    wy_ = mod_floor(wy, order);
    wt_ = mod_floor(wt, order);
  }

  std::int64_t order() const { return order_; }
  std::int64_t wx() const { return wx_; }
  std::int64_t wy() const { return wy_; }
  std::int64_t wt() const { return wt_; }

  std::int64_t weight(const Monomial& m) const {
    return mod_floor(m.x * wx_ + m.y * wy_ + m.t * wt_, order_);
  }

  /// The k-th power of the action.
  DiagonalAction power(std::int64_t k) const {
    return DiagonalAction(order_, k * wx_, k * wy_, k * wt_);
  }

  /// Multiplicative order of the weight vector mod n: the true order of the
  /// map, which may be a proper divisor of n.
  std::int64_t effective_order() const {
    const std::int64_t g = std::gcd(std::gcd(std::gcd(wx_, wy_), wt_), order_);
    return order_ / g;
  }

 private:
  std::int64_t order_;
  std::int64_t wx_, wy_, wt_;
};

struct InvarianceResult {
  bool invariant = false;
  std::int64_t common_weight = 0;  // meaningful when invariant
  /// Weight of y^2 first, then of each right-hand monomial in input order.
  std::vector<std::int64_t> weights;
  std::vector<std::string> labels;

  std::string describe() const {
    std::string s;
    for (std::size_t k = 0; k < weights.size(); ++k)
      s += (k ? ", " : "") + labels[k] + " -> " + std::to_string(weights[k]);
    return s;
  }
};

/// The equation is preserved up to scaling iff every monomial picks up the
/// same power of zeta.
inline InvarianceResult check_invariance(const MonomialWeierstrass& e, const DiagonalAction& a) {
  InvarianceResult r;
  r.weights.push_back(a.weight(Monomial{1, 0, 2, 0}));
  r.labels.push_back("y^2");
  for (const auto& m : e.rhs()) {
    r.weights.push_back(a.weight(m));
    r.labels.push_back(m.str());
  }
  r.common_weight = r.weights.front();
  r.invariant = std::all_of(r.weights.begin(), r.weights.end(),
                            [&](std::int64_t w) { return w == r.common_weight; });
  return r;
}

struct TwoFormWeight {
  std::int64_t weight = 0;      // exponent k in sigma* omega = zeta^k omega
  bool primitive = false;       // k is a unit mod n: non-symplectic of full order n
  bool symplectic_or_trivial = false;  // k = 0 mod n
};

/// Weight on omega = dx ^ dt / y, namely w_x + w_t - w_y (mod n).
inline TwoFormWeight two_form_weight(const DiagonalAction& a) {
  TwoFormWeight w;
  w.weight = mod_floor(a.wx() + a.wt() - a.wy(), a.order());
  w.primitive = std::gcd(w.weight, a.order()) == 1;
  w.symplectic_or_trivial = (w.weight == 0);
  return w;
}

}  // namespace k3fix
