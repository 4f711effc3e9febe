#include <iostream>

#include "bisep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bisep::run_cli(args, std::cout, std::cerr);
}
