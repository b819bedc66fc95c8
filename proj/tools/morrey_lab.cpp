#include <iostream>

#include "morrey/lab/cli.hpp"

int main(int argc, char** argv) { return morrey::lab::cli_main(argc, argv, std::cout, std::cerr); }
