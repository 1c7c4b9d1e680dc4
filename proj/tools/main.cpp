#include "symspace/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return symspace::run_cli(argc, argv, std::cout, std::cerr); }
