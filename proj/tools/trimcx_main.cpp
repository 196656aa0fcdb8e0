#include <iostream>
#include <string>
#include <vector>

#include "trimcx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return trimcx::run_cli(args, std::cout, std::cerr);
}
