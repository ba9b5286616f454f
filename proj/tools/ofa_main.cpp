#include <iostream>
#include <string>
#include <vector>

#include "ofa/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ofa::cli::run(args, std::cout, std::cerr);
}
