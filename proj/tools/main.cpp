#include <iostream>

#include "waccess/cli.hpp"

int main(int argc, char** argv) { return waccess::run_cli(argc, argv, std::cout, std::cerr); }
