#include <iostream>

#include "locsom/cli.hpp"

int main(int argc, char** argv) { return locsom::cli::run(argc, argv, std::cout, std::cerr); }
