// Reduces the holomorphic Lefschetz system for order 21, then classifies the
// fixed locus with the shipped capacities.
#include <iostream>

#include "k3fix/k3fix.hpp"

using namespace k3fix;

int main() {
  const ConstraintSystem sys = build_holomorphic_system(21);
  const auto solved = solve_for(sys, {"m(2,20)", "m(3,19)", "m(4,18)", "m(5,17)", kGSumVariable});
  for (const auto& name : sys.variables())
    if (auto it = solved.find(name); it != solved.end())
      std::cout << format_affine(name, it->second, sys.variables()) << "\n";

  ScenarioRegistry reg;
  for (const char* n : {"order7", "order21"})
    reg.add(load_scenario(std::string(K3FIX_SCENARIO_DIR) + "/" + n + ".json"));
  const SolutionSet set = reg.enumerate("order21");
  std::cout << "\n" << report_markdown(reg.get("order21"), set);
}
