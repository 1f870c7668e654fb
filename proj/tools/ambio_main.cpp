#include <iostream>

#include "ambio/cli.hpp"

int main(int argc, char** argv) { return ambio::cli_dispatch(argc, argv, std::cout, std::cerr); }
