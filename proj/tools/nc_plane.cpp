#include <iostream>

#include "ncplane/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncplane::cli::run(args, std::cout, std::cerr);
}
