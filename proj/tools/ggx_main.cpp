#include <iostream>

#include "gge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gge::cli::dispatch(args, std::cout, std::cerr);
}
