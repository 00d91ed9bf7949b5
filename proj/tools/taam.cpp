#include <iostream>

#include "taam/cli.hpp"

int main(int argc, char** argv) {
  return taam::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
