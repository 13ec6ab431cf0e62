#include "windtree/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return windtree::run_cli(argc, argv, std::cout, std::cerr); }
