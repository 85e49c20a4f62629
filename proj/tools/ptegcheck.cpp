#include <string>
#include <vector>

#include "pteg/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pteg::run_cli(std::move(args));
}
