#include <iostream>
#include <string>
#include <vector>

#include "fairclust/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fairclust::cli::run(args, std::cout, std::cerr);
}
