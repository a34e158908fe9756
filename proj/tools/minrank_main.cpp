#include <iostream>

#include "minrank/cli.hpp"

int main(int argc, char** argv) {
    return minrank::run_command({argv + 1, argv + argc}, std::cout, std::cerr);
}
