#include <iostream>

#include "tachyon/cli.hpp"

int main(int argc, char** argv) { return tachyon::cli::run(argc, argv, std::cout, std::cerr); }
