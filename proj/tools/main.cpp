#include <iostream>

#include "residue_forge/cli.hpp"

int main(int argc, char** argv) {
    return residue_forge::cli::run(argc, argv, std::cout, std::cerr);
}
