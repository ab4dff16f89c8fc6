#include <iostream>

#include "galhecke/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return galhecke::run_cli(args, std::cout, std::cerr);
}
