#include "azulift/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return azulift::cli::run(argc, argv, std::cout, std::cerr); }
