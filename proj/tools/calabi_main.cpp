#include <iostream>

#include "calabi/cli.hpp"

int main(int argc, char** argv)
{
    return calabi::cli::run(argc, argv, std::cout, std::cerr);
}
