#include <iostream>

#include "fuzzylln/commands.hpp"

int main(int argc, char** argv) {
  return fuzzylln::run_cli(argc, argv, std::cout, std::cerr);
}
