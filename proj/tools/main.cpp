#include <iostream>

#include "tmlab/commands.hpp"

int main(int argc, char** argv) { return tmlab::run_cli(argc, argv, std::cout, std::cerr); }
