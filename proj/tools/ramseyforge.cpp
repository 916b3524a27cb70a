#include <iostream>

#include "ramseyforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ramseyforge::run_cli(args, std::cout, std::cerr);
}
