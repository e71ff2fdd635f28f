#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace s2w {

enum ExitCode : int {
    exit_pass = 0,
    exit_check_failed = 1,
    exit_usage = 2,
    exit_numeric = 3,
};

/// Name of the environment variable consulted as the lowest-precedence seed source.
inline constexpr const char* kSeedEnvVar = "SPHERE2WIENER_SEED";

/**
 * Entry point of the `sphere2wiener` tool. `args` excludes the program name. Reports and
 * dumps go to `out` unless --out is given; diagnostics go to `err`. `env_seed` is the
 * value of SPHERE2WIENER_SEED, if set.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::optional<std::string>& env_seed = std::nullopt);

}  // namespace s2w
