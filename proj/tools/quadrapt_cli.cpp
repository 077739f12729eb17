#include <iostream>

#include "quadrapt/cli.hpp"

int main(int argc, char** argv) {
  return quadrapt::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
