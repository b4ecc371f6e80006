#include <iostream>

#include "mdg/cli.hpp"

int main(int argc, char** argv) { return mdg::cli::run(argc, argv, std::cout, std::cerr); }
