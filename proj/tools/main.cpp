#include <iostream>

#include "rb/cli.hpp"

int main(int argc, char** argv) {
    return rb::cli::run_cli(argc, argv, std::cout, std::cerr);
}
