#include <iostream>

#include "heunkit/cli.hpp"

int main(int argc, char** argv) { return heunkit::run_cli(argc, argv, std::cout, std::cerr); }
