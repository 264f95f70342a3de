#include "commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return moyal::cli::run(argc, argv, std::cout, std::cerr); }
