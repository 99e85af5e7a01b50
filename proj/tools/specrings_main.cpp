#include <iostream>

#include "specrings/cli.hpp"

int main(int argc, char** argv) { return specrings::run_cli(argc, argv, std::cout, std::cerr); }
