#include <iostream>

#include "minutes/cli.hpp"

int main(int argc, char** argv) {
  return minutes::cli::run(argc, argv, std::cout, std::cerr);
}
