#include <iostream>

#include "matchlab/cli.hpp"

int main(int argc, char** argv) {
  return matchlab::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
