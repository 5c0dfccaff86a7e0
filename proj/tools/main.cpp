#include <iostream>
#include <string>
#include <vector>

#include "wdsec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wdsec::cli::dispatch(args, std::cout, std::cerr);
}
