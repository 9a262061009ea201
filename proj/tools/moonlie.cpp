#include <iostream>

#include "moonlie/cli.hpp"

int main(int argc, char** argv) { return moonlie::run_cli(argc, argv, std::cout, std::cerr); }
