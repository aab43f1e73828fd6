#include <iostream>

#include "tempnet/cli.hpp"

int main(int argc, char** argv) { return tempnet::cli::run(argc, argv, std::cout, std::cerr); }
