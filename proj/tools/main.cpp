#include <iostream>

#include "rationing/cli.hpp"

int main(int argc, char** argv) {
  return rationing::cli::run(argc, argv, {std::cin, std::cout, std::cerr});
}
