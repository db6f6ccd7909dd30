#include <iostream>

#include "strposet/cli.hpp"

int main(int argc, char** argv) { return strposet::run_cli(argc, argv, std::cout, std::cerr); }
