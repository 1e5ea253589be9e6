#include <iostream>

#include "uavcov/cli/commands.hpp"

int main(int argc, char** argv) {
    return uavcov::cli::run_cli(argc, argv, std::cout, std::cerr);
}
