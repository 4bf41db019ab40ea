#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::cout.setf(std::ios::unitbuf);
  return pertlab::cli::run(argc, argv, std::cout, std::cerr);
}
