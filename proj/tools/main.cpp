#include <string>
#include <vector>

#include "cmsent/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cmsent::run_cli(args);
}
