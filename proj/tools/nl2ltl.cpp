#include <iostream>

#include "nl2ltl/cli.hpp"

int main(int argc, char **argv) {
  return nl2ltl::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
