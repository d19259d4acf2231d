// tfdcx.cpp — command-line entry point

#include "tfd/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return tfd::cli::run(argc, argv, std::cout, std::cerr);
}
