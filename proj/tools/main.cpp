#include <iostream>

#include "swonbt/cli.hpp"

int main(int argc, char** argv) { return swonbt::run_cli(argc, argv, std::cout, std::cerr); }
