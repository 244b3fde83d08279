#include <iostream>

#include "allmach/cli/run.hpp"

int main(int argc, char** argv) { return allmach::cli::main_entry(argc, argv, std::cout, std::cerr); }
