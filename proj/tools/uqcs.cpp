#include <iostream>

#include "uqcs/cli/run.hpp"

int main(int argc, char** argv) { return uqcs::cli::run_cli(argc, argv, std::cout, std::cerr); }
