#include <iostream>

#include "szilard/cli.hpp"

int main(int argc, char** argv) { return szilard::cli::run(argc, argv, std::cout, std::cerr); }
