#include <iostream>

#include "kelvin/cli.hpp"

int main(int argc, char** argv) { return kelvin::run_cli(argc, argv, std::cout, std::cerr); }
