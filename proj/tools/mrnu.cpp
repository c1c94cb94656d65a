#include "mrnu/cli.hpp"

#include <iostream>

int main(int argc, char **argv) {
  return mrnu::run_cli(argc, argv, std::cout, std::cerr);
}
