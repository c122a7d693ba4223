#include "blasius/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return blasius::cli::run(argc, argv, std::cout, std::cerr); }
