#include <iostream>
#include <string>
#include <vector>

#include "lerch/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return lerch::cli::run(args, std::cout, std::cerr);
}
