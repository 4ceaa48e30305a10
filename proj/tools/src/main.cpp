#include <iostream>

#include "cachepriv_cli/cli.hpp"

int main(int argc, char** argv) { return cachepriv::cli::cli_main(argc, argv, std::cout, std::cerr); }
