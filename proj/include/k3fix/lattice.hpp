#pragma once

// Even lattices given by Gram matrices, the standard named pieces, and the
// rank bookkeeping that pins down rk S and rk T on a K3 surface.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "k3fix/errors.hpp"
#include "k3fix/number_theory.hpp"
#include "k3fix/rational.hpp"

namespace k3fix {

using GramMatrix = std::vector<std::vector<std::int64_t>>;

class Lattice {
 public:
  Lattice() = default;
  Lattice(GramMatrix gram, std::string name = {})
      : gram_(std::move(gram)), name_(std::move(name)) {
    for (const auto& row : gram_)
      if (row.size() != gram_.size()) throw UsageError("Gram matrix is not square");
    for (std::size_t i = 0; i < gram_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (gram_[i][j] != gram_[j][i]) throw UsageError("Gram matrix is not symmetric");
  }

  const GramMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  std::size_t rank() const { return gram_.size(); }

  bool is_even() const {
    for (std::size_t i = 0; i < gram_.size(); ++i)
      if (gram_[i][i] % 2 != 0) return false;
    return true;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.gram_ == b.gram_; }

 private:
  GramMatrix gram_;
  std::string name_;
};

namespace detail {

inline Lattice negative_cartan(std::size_t rank,
                               const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                               std::string name) {
  GramMatrix g(rank, std::vector<std::int64_t>(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) g[i][i] = -2;
  for (auto [a, b] : edges) g[a][b] = g[b][a] = 1;
  return Lattice(std::move(g), std::move(name));
}

}  // namespace detail

inline Lattice lattice_U(std::int64_t scale = 1) {
  if (scale < 1) throw UsageError("U(m) needs m >= 1");
  return Lattice({{0, scale}, {scale, 0}},
                 scale == 1 ? "U" : "U(" + std::to_string(scale) + ")");
}

inline Lattice lattice_A(std::size_t m) {
  if (m < 1) throw UsageError("A_m needs m >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
  return detail::negative_cartan(m, edges, "A" + std::to_string(m));
}

inline Lattice lattice_D(std::size_t n) {
  if (n < 4) throw UsageError("D_n needs n >= 4");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(n - 3, n - 1);
  return detail::negative_cartan(n, edges, "D" + std::to_string(n));
}

/// Bourbaki labelling: chain 1-3-4-...-l with node 2 attached to node 4.
inline Lattice lattice_E(std::size_t l) {
  if (l < 6 || l > 8) throw UsageError("E_l needs l in {6, 7, 8}");
  std::vector<std::pair<std::size_t, std::size_t>> edges = {{0, 2}, {1, 3}};
  for (std::size_t i = 2; i + 1 < l; ++i) edges.emplace_back(i, i + 1);
  return detail::negative_cartan(l, edges, "E" + std::to_string(l));
}

inline Lattice lattice_K7() { return Lattice({{-4, 1}, {1, -2}}, "K7"); }

/// Parses "U", "U(m)", "A_m"/"Am", "D_n", "E_l", "K7" (case-sensitive).
inline Lattice named_lattice(const std::string& name) {
  static const std::regex u_re(R"(U(?:\((\d+)\))?)");
  static const std::regex root_re(R"(([ADE])_?(\d+))");
  std::smatch m;
  if (name == "K7" || name == "K_7") return lattice_K7();
  if (std::regex_match(name, m, u_re))
    return lattice_U(m[1].matched ? std::stoll(m[1].str()) : 1);
  if (std::regex_match(name, m, root_re)) {
    const auto k = static_cast<std::size_t>(std::stoul(m[2].str()));
    switch (m[1].str()[0]) {
      case 'A': return lattice_A(k);
      case 'D': return lattice_D(k);
      default: return lattice_E(k);
    }
  }
  throw UsageError("unknown lattice name '" + name + "'");
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank() + b.rank();
  GramMatrix g(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) g[i][j] = a.gram()[i][j];
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) g[a.rank() + i][a.rank() + j] = b.gram()[i][j];
  std::string name = a.name().empty() ? b.name()
                     : b.name().empty() ? a.name()
                                        : a.name() + "+" + b.name();
  return Lattice(std::move(g), std::move(name));
}

/// "U+E8+A6" (also accepts the direct-sum sign as separator).
inline Lattice parse_lattice_sum(std::string text) {
  const std::string oplus = "⊕";
  for (std::size_t pos; (pos = text.find(oplus)) != std::string::npos;)
    text.replace(pos, oplus.size(), "+");
  Lattice acc;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('+', start), text.size());
    std::string part = text.substr(start, end - start);
    part.erase(std::remove_if(part.begin(), part.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               part.end());
    if (part.empty()) throw UsageError("empty summand in lattice expression");
    acc = direct_sum(acc, named_lattice(part));
    start = end + 1;
  }
  return acc;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const Lattice& l) {
  const std::size_t n = l.rank();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = l.gram()[i][j];
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t nullity = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Sylvester signature by congruence diagonalization over Q.
inline Signature signature(const Lattice& l) {
  const std::size_t n = l.rank();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = l.gram()[i][j];

  Signature sig;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> piv;
    for (std::size_t i = 0; i < n && !piv; ++i)
      if (!done[i] && m[i][i] != 0) piv = i;
    if (!piv) {
      // No usable diagonal entry: replace e_i by e_i + e_j for an
      // off-diagonal nonzero, which creates diagonal 2*m[i][j].
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t i = 0; i < n && !off; ++i)
        for (std::size_t j = i + 1; j < n && !off; ++j)
          if (!done[i] && !done[j] && m[i][j] != 0) off = std::make_pair(i, j);
      if (!off) break;
      auto [i, j] = *off;
      for (std::size_t k = 0; k < n; ++k) m[i][k] += m[j][k];
      for (std::size_t k = 0; k < n; ++k) m[k][i] += m[k][j];
      piv = i;
    }
    const std::size_t p = *piv;
    done[p] = true;
    (m[p][p] > 0 ? sig.positive : sig.negative) += 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || m[i][p] == 0) continue;
      const Rational f = m[i][p] / m[p][p];
      for (std::size_t k = 0; k < n; ++k) m[i][k] -= f * m[p][k];
      for (std::size_t k = 0; k < n; ++k) m[k][i] -= f * m[k][p];
    }
  }
  sig.nullity = n - sig.positive - sig.negative;
  return sig;
}

struct LatticeInvariants {
  std::size_t rank = 0;
  Integer determinant;
  Signature signature;
  bool is_even = true;
  bool is_unimodular = false;
  bool is_degenerate = false;
};

inline LatticeInvariants invariants(const Lattice& l) {
  LatticeInvariants inv;
  inv.rank = l.rank();
  inv.determinant = determinant(l);
  inv.signature = signature(l);
  inv.is_even = l.is_even();
  inv.is_unimodular = abs(inv.determinant) == 1;
  inv.is_degenerate = inv.determinant == 0;
  return inv;
}

// ---------------------------------------------------------------------------
// Rank deduction for S_X (Neron-Severi) and T_X (transcendental) of a K3
// surface carrying a non-symplectic automorphism of order I.

struct RankScenario {
  std::int64_t order = 1;
  std::int64_t invariant_rank = 0;  // rank of the invariant lattice S^sigma
  std::int64_t total_rank = 22;     // b_2 of a K3 surface
};

struct RankDeduction {
  /// Every rk T compatible with the constraints, increasing.
  std::vector<std::int64_t> feasible_rank_T;
  bool unique = false;
  std::int64_t rank_T = 0;  // meaningful when unique
  std::int64_t rank_S = 0;
  bool action_on_S_forced_trivial = false;
};

/// rk T is a positive multiple of phi(I) (T carries only primitive
/// eigenvalues) and at least 2 (T contains the real span of the 2-form),
/// rk S >= invariant rank, and rk S + rk T = 22.
inline RankDeduction deduce_ranks(const RankScenario& s) {
  if (s.order < 1) throw UsageError("deduce_ranks: order must be >= 1");
  if (s.invariant_rank < 0 || s.invariant_rank > s.total_rank)
    throw UsageError("deduce_ranks: invariant rank out of range");
  const std::int64_t phi = euler_totient(s.order);
  RankDeduction out;
  for (std::int64_t t = std::max<std::int64_t>(phi, 2); t + s.invariant_rank <= s.total_rank; ++t)
    if (t % phi == 0) out.feasible_rank_T.push_back(t);
  if (out.feasible_rank_T.empty())
    throw InfeasibleError("no rank of T is compatible with order " +
                          std::to_string(s.order) + " and invariant rank " +
                          std::to_string(s.invariant_rank));
  if (out.feasible_rank_T.size() == 1) {
    out.unique = true;
    out.rank_T = out.feasible_rank_T.front();
    out.rank_S = s.total_rank - out.rank_T;
    out.action_on_S_forced_trivial = (out.rank_S == s.invariant_rank);
  }
  return out;
}

}  // namespace k3fix
