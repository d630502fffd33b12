#include <iostream>
#include <string>
#include <vector>

#include "egyfrac/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return egyfrac::cli::run(args, std::cout, std::cerr);
}
