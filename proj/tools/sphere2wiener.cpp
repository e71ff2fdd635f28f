#include "s2w/cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> env_seed;
    if (const char* v = std::getenv(s2w::kSeedEnvVar)) {
        env_seed = v;
    }
    return s2w::run_cli(args, std::cout, std::cerr, env_seed);
}
