#include <iostream>

#include "yulecrack/cli.hpp"

int main(int argc, char** argv) { return yulecrack::cli::run(argc, argv, std::cout, std::cerr); }
