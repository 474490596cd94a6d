#include <iostream>

#include "tsvar/cli.hpp"

int main(int argc, char** argv)
{
    return tsvar::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
