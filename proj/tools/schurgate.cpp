#include <iostream>

#include "schurgate/cli.hpp"

int main(int argc, char** argv) { return schurgate::run_cli(argc, argv, std::cout, std::cerr); }
