#include <iostream>
#include <string>
#include <vector>

#include "fde/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return fde::cli::run_command(args, std::cout, std::cerr);
}
