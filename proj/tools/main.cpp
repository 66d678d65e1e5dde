#include <iostream>

#include "poissonplace/cli/app.hpp"

int main(int argc, char** argv) { return poissonplace::cli::run(argc, argv, std::cout, std::cerr); }
