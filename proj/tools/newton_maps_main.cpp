#include <iostream>

#include "newton_maps/cli.hpp"

int main(int argc, char** argv) {
  return newton_maps::run_cli(argc, argv, std::cout, std::cerr);
}
