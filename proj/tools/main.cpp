#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return sl2r::cli::run(argc, argv, std::cout, std::cerr); }
