#include <iostream>

#include "ageorder/cli.hpp"

int main(int argc, char** argv) { return ageorder::cli::main_entry(argc, argv, std::cout, std::cerr); }
