#include <iostream>

#include "clnode/cli.hpp"

int main(int argc, char** argv) {
  return clnode::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
