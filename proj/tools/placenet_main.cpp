#include <iostream>
#include <string>
#include <vector>

#include "placenet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return placenet::run(args, std::cout, std::cerr);
}
