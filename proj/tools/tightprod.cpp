#include <iostream>

#include "tightprod/cli.hpp"

int main(int argc, char** argv) { return tightprod::cli::run_cli(argc, argv, std::cout, std::cerr); }
