#include <iostream>
#include <string>
#include <vector>

#include "homoforge/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return homoforge::run_cli(args, std::cout, std::cerr);
}
