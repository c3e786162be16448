#include <iostream>
#include <string>
#include <vector>

#include "powiv/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return powiv::cli::run(args, std::cout, std::cerr);
}
