#include <iostream>

#include "bhc/cli.hpp"

int main(int argc, char** argv) { return bhc::cli::run(argc, argv, std::cout, std::cerr); }
