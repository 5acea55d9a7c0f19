#include <iostream>

#include "coexpr/cli.hh"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return coexpr::run_command(args, std::cout, std::cerr);
}
