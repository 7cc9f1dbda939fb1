#include <iostream>
#include <string>
#include <vector>

#include "vtergm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vtergm::run_cli(args, std::cout, std::cerr);
}
