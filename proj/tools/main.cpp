#include <iostream>

#include "varmult/cli.hpp"

int main(int argc, char** argv) { return varmult::run_cli(argc, argv, std::cout, std::cerr); }
