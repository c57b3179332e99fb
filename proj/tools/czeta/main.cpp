#include <iostream>

#include "czeta/harness.hpp"

int main(int argc, char** argv) { return czeta::harness::cli_main(argc, argv, std::cout, std::cerr); }
