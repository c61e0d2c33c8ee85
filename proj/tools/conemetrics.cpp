#include <iostream>

#include "conemetrics/cli/commands.hpp"

int main(int argc, char** argv) {
  return conemetrics::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
