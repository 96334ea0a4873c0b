#include <iostream>

#include "aslab/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return aslab::cli::run(args, std::cout, std::cerr);
}
