#include <iostream>

#include "dlab/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return dlab::run(argc, argv, std::cout, std::cerr);
}
