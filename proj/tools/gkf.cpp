#include <iostream>

#include "gkf/cli.hpp"

int main(int argc, char** argv) { return gkf::run_cli(argc, argv, std::cout, std::cerr); }
