#include <iostream>

#include "safeflow/cli.hpp"

int main(int argc, char** argv) { return safeflow::run_cli(argc, argv, std::cout, std::cerr); }
