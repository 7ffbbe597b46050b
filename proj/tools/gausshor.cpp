#include <iostream>
#include <string>
#include <vector>

#include "gausshor/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gausshor::run_cli(args, std::cout, std::cerr);
}
