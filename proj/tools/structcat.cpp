#include <iostream>
#include <string>
#include <vector>

#include "structcat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return structcat::cli::run(args, std::cout, std::cerr);
}
