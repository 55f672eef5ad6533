#include <iostream>
#include <string>
#include <vector>

#include "catamaj/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return catamaj::run_command(args, std::cin, std::cout, std::cerr);
}
