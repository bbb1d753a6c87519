#include <iostream>

#include "sphfin_cli/run.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return sphfin::cli::run_command(args, std::cout, std::cerr);
}
