#include <iostream>

#include "crjet/cli.hpp"

int main(int argc, char** argv) { return crjet::cli::run(argc, argv, std::cout, std::cerr); }
