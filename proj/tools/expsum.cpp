#include <iostream>

#include "sparsesum/cli.hpp"

int main(int argc, char** argv) {
    return sparsesum::cli::run(argc, argv, std::cout, std::cerr);
}
