#include <iostream>

#include "kwb/cli.hpp"

int main(int argc, char** argv) {
  return kwb::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
