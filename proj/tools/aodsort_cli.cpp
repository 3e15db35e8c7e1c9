#include <iostream>
#include <string>
#include <vector>

#include "aodsort/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return aodsort::runCli(args, std::cout, std::cerr);
}
