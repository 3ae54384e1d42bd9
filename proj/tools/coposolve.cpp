#include <iostream>

#include "coposolve/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return coposolve::cli::run(args, std::cout, std::cerr);
}
