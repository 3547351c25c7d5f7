#include <iostream>

#include "ince_cli.hpp"

int main(int argc, char** argv) { return ince::cli::run(argc, argv, std::cout, std::cerr); }
