#include <iostream>

#include "edp/cli.hpp"

int main(int argc, char** argv) { return edp::run(argc, argv, std::cout, std::cerr); }
