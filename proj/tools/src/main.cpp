#include <iostream>

#include "cuspgeom_cli/commands.hpp"

int main(int argc, char** argv) {
  return cuspgeom::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
