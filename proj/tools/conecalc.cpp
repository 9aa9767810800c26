#include <iostream>

#include "conecalc/cli.hpp"

int main(int argc, char** argv) { return conecalc::cli_dispatch(argc, argv, std::cout, std::cerr); }
