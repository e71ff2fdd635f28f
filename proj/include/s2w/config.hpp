#pragma once

#include "s2w/experiments.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace s2w {

/// Keys accepted in a configuration document, in canonical order.
const std::vector<std::string>& config_keys();

/// Parsed but not yet defaulted key=value pairs, in document order.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/**
 * Tokenize a flat `key=value` document. Blank lines and lines starting with '#' are
 * ignored; whitespace around keys and values is trimmed. Unknown or repeated keys and
 * lines without '=' raise ConfigError.
 */
ConfigEntries read_config_entries(std::string_view text);

/// Fill defaults for `experiment`, then apply entries (the `experiment` entry is skipped).
/// Throws ConfigError naming the key on unparsable values.
void apply_entries(ExperimentConfig& config, const ConfigEntries& entries);

/**
 * Parse and validate a complete configuration document. `experiment` is required; every
 * other key falls back to the experiment's default.
 *
 * Lists (n_grid, time_points) are comma separated. Counts accept `2^k`, reals accept
 * `a/b`, seeds accept decimal or 0x-prefixed hex.
 */
ExperimentConfig parse_config(std::string_view text);

/// Canonical document for `config`; parse_config(format_config(c)) reproduces c.
std::string format_config(const ExperimentConfig& config);

/// Same content as format_config, as ordered key/value pairs.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& config);

std::uint64_t parse_seed(std::string_view key, std::string_view text);
std::size_t parse_count(std::string_view key, std::string_view text);
double parse_real(std::string_view key, std::string_view text);

}  // namespace s2w
