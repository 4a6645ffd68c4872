#include <iostream>

#include "qcorr/harness.hpp"

int main(int argc, char** argv) { return qcorr::run_cli(argc, argv, std::cout, std::cerr); }
