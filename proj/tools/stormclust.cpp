#include <iostream>

#include "stormclust/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stormclust::cli::run(args, std::cout, std::cerr);
}
