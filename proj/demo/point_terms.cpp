// Prints the local contribution 1/((1-z^i)(1-z^j)) of each isolated type for a
// given order, as a vector over Q in the power basis of Q(zeta_n).
#include <cstdlib>
#include <iostream>

#include "k3fix/k3fix.hpp"

using namespace k3fix;

int main(int argc, char** argv) {
  const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 7;
  if (n < 3) {
    std::cerr << "order must be >= 3\n";
    return 1;
  }
  std::cout << "Phi_" << n << " = " << cyclotomic_polynomial(n).str("z") << "\n";
  std::cout << "lhs 1 + z^" << n - 1 << " = " << holomorphic_lhs(n).str() << "\n";
  for (const PointType& t : isolated_types(n)) {
    const CyclotomicNumber v = point_term(t);
    std::cout << t.str() << "  " << v.str() << "  trace " << to_string(v.galois_trace()) << "\n";
  }
  std::cout << "curve (g=0)  " << curve_unit_term(n).str() << "\n";
}
