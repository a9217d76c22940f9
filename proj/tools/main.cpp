#include "kwlie/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    kwlie::CommandResult res = kwlie::run_command(args);
    if (res.exit_code == 0)
        std::cout << res.output;
    else
        std::cerr << res.output;
    return res.exit_code;
}
