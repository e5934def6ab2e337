// Entry point for the klac command-line tool.
#include <iostream>
#include <string>
#include <vector>

#include "klac/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return klac::dispatch(args, std::cout, std::cerr);
}
