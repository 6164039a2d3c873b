#include <iostream>

#include "essencery/cli.hpp"

int main(int argc, char** argv) { return essencery::cli::run(argc, argv, std::cout, std::cerr); }
