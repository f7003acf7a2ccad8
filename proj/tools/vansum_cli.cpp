#include <iostream>
#include <string>
#include <vector>

#include "vansum/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vansum::cli::run(args, std::cout, std::cerr);
}
