#include <iostream>

#include "kerpair/cli.hpp"

int main(int argc, char** argv) { return kerpair::cli::run(argc, argv, std::cout, std::cerr); }
