#include "vanlat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vanlat::run_cli(argc, argv, std::cout, std::cerr); }
