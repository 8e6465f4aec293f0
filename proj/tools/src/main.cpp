#include <iostream>

#include "hmdf_cli/commands.hpp"

int main(int argc, char** argv) { return hmdf::cli::run(argc, argv, std::cout, std::cerr); }
