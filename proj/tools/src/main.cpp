#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  return aif::cli::Run(argc, argv, std::cout, std::cerr);
}
