#include <iostream>

#include "reptile/cli.hpp"

int main(int argc, char** argv) { return reptile::main_with(argc, argv, std::cout, std::cerr); }
