#include <iostream>

#include "realroots_cli/commands.hpp"

int main(int argc, char** argv) { return realroots::cli::run(argc, argv, std::cout, std::cerr); }
