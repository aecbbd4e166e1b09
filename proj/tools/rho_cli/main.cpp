#include <iostream>

#include "rho_cli/commands.hpp"

int main(int argc, char** argv) {
  return rho::cli::run(argc, argv, {std::cout, std::cerr});
}
