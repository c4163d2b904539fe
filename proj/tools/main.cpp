#include <iostream>

#include "grr/cli.hpp"

int main(int argc, char** argv) {
  return grr::main_entry(argc, argv, std::cout, std::cerr);
}
