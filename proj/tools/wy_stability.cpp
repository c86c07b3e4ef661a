#include <iostream>

#include "wy/cli/commands.hpp"

int main(int argc, char** argv) { return wy::cli::run_cli(argc, argv, std::cout, std::cerr); }
