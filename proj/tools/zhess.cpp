#include <iostream>
#include <string>
#include <vector>

#include <zerohess/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto r = zerohess::cli::run_command(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
