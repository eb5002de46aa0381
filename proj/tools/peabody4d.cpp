#include <iostream>

#include "peabody4d/cli.hpp"

int main(int argc, char** argv) { return peabody4d::run_cli(argc, argv, std::cout, std::cerr); }
