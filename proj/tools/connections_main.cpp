#include <iostream>

#include "connections/cli.hpp"

int main(int argc, char** argv) {
  return connections::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
