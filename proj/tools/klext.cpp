#include "klext/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return klext::cli::run(argc, argv, std::cout, std::cerr); }
