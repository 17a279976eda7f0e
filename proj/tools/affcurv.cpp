#include "affcurv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return affcurv::run(argc, argv, std::cout, std::cerr); }
