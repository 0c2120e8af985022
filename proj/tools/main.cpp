#include <iostream>

#include "gtorus/cli.hpp"

int main(int argc, char** argv) { return gtorus::cli::dispatch(argc, argv, std::cout, std::cerr); }
