#include <iostream>

#include "svadf/cli.hpp"

int main(int argc, char** argv) { return svadf::cli::run(argc, argv, std::cout, std::cerr); }
