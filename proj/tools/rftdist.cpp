#include <iostream>

#include "rftdist/cli.hpp"

int main(int argc, char** argv) { return rftdist::cli::run(argc, argv, std::cout, std::cerr); }
