#include <iostream>
#include <string>
#include <vector>

#include "sarlab/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return sarlab::run_cli(args, std::cout, std::cerr);
}
