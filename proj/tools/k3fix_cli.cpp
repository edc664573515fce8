#include <iostream>

#include "k3fix/cli.hpp"

int main(int argc, char** argv) {
  return k3fix::run_cli(argc, argv, std::cout, std::cerr, K3FIX_SCENARIO_DIR);
}
