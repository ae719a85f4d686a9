#include <iostream>

#include "bitempo/cli/run.hpp"

int main(int argc, char** argv) {
  return bitempo::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
