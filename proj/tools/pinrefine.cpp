#include <iostream>

#include "pinrefine/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pinrefine::run_cli(args, std::cout, std::cerr);
}
