#include <iostream>
#include <string>
#include <vector>

#include "grammar_forge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return grammar_forge::cli::RunCli(args, std::cout, std::cerr);
}
