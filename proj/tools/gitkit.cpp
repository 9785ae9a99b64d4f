#include <iostream>

#include "gitkit/cli.hpp"

int main(int argc, char** argv) { return gitkit::cli::run(argc, argv, std::cout, std::cerr); }
