#include "cfdim/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return cfdim::cli::main(argc, argv, std::cout, std::cerr);
}
