#include <iostream>

#include "hypopq/cli.hpp"

int main(int argc, char** argv) { return hypopq::cli::run(argc, argv, std::cout, std::cerr); }
