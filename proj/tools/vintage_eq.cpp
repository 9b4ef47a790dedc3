#include <iostream>

#include "vintage/commands.hpp"

int main(int argc, char** argv) { return vintage::cli::run(argc, argv, std::cout, std::cerr); }
