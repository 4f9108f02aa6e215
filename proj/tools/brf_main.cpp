#include <iostream>
#include <string>
#include <vector>

#include "brf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return brf::cli::run(args, std::cout, std::cerr);
}
