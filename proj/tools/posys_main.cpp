#include <iostream>
#include <vector>

#include "posys/problem_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return posys::io::run_command(args, std::cout, std::cerr);
}
