#include <iostream>

#include "llab/cli/app.hpp"

int main(int argc, char** argv) { return llab::cli::run(argc, argv, std::cout, std::cerr); }
