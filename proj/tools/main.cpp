#include <iostream>
#include <string>
#include <vector>

#include "rangekit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rangekit::dispatch(args, std::cout, std::cerr);
}
