#include <iostream>
#include <string>
#include <vector>

#include "hra_cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hra::cli::main(std::move(args), std::cout, std::cerr);
}
