#include "polyfw/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return polyfw::parse_and_dispatch(argc, argv, std::cout, std::cerr); }
