#include <iostream>

#include "hetbound/cli.hpp"

int main(int argc, char** argv) { return hetbound::cli_main(argc, argv, std::cout, std::cerr); }
