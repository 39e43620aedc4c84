#include <iostream>

#include "levysir_app/commands.hpp"

int main(int argc, char** argv) {
  return levysir::app::run_cli(argc, argv, std::cout, std::cerr);
}
