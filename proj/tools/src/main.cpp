#include <iostream>
#include <string>
#include <vector>

#include "stringnet_cli/commands.hpp"

int main(int argc, char **argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return stringnet::cli::run_cli(args, std::cout, std::cerr);
}
