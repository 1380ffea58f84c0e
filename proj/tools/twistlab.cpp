#include <twistlab/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return twistlab::run_cli(argc, argv, std::cout, std::cerr); }
