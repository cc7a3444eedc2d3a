#include "sparsefact/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return sparsefact::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
