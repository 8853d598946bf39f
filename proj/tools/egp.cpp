#include <iostream>

#include "egp/cli/cli.hpp"

int main(int argc, char** argv) { return egp::cli::run(argc, argv, std::cout, std::cerr); }
