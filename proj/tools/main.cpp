#include "sodkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return sodkit::cli::main_entry(argc, argv, std::cout, std::cerr);
}
