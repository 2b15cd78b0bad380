#include <iostream>
#include <string>
#include <vector>

#include "fibcomm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fibcomm::cli::run(args, std::cout, std::cerr);
}
