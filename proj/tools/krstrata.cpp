#include <iostream>

#include "krstrata/cli.hpp"

int main(int argc, char** argv) { return krs::cli::run(argc, argv, std::cout, std::cerr); }
