#include <iostream>

#include "subshift/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return subshift::run_cli(args, std::cout, std::cerr);
}
