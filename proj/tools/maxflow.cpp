#include <iostream>

#include "cmf/cli.hpp"

int main(int argc, char** argv) { return cmf::run_cli(argc, argv, std::cout, std::cerr); }
