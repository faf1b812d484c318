#include <iostream>
#include <string>
#include <vector>

#include "synlint/commands.hpp"

int main(int argc, char* argv[]) {
  std::vector<std::string> args(argv, argv + argc);
  return synlint::cli::run(args, std::cout, std::cerr);
}
