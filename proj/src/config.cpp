#include "s2w/config.hpp"

#include "s2w/errors.hpp"
#include "s2w/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

namespace s2w {

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "experiment", "n_grid", "replicates", "p", "hurst", "time_points", "seed",
        "ks_level", "z_threshold", "slope_tolerance", "ks_n", "ks_replicates",
    };
    return keys;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view text, const char* expected) {
    throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "' as " + expected);
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text, int base, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        bad_value(key, text, what);
    }
    return value;
}

double parse_plain_real(std::string_view key, std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        bad_value(key, text, "a real number");
    }
    return value;
}

}  // namespace

std::uint64_t parse_seed(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text.starts_with("0x") || text.starts_with("0X")) {
        return parse_unsigned(key, text.substr(2), 16, "a 64-bit seed");
    }
    return parse_unsigned(key, text, 10, "a 64-bit seed");
}

std::size_t parse_count(std::string_view key, std::string_view text) {
    text = trim(text);
    if (const auto caret = text.find('^'); caret != std::string_view::npos) {
        const auto base = parse_unsigned(key, trim(text.substr(0, caret)), 10, "a count");
        const auto exponent = parse_unsigned(key, trim(text.substr(caret + 1)), 10, "a count");
        std::uint64_t value = 1;
        for (std::uint64_t i = 0; i < exponent; ++i) {
            if (base != 0 && value > std::numeric_limits<std::uint64_t>::max() / base) {
                bad_value(key, text, "a count (overflow)");
            }
            value *= base;
        }
        return static_cast<std::size_t>(value);
    }
    return static_cast<std::size_t>(parse_unsigned(key, text, 10, "a count"));
}

double parse_real(std::string_view key, std::string_view text) {
    text = trim(text);
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const double num = parse_plain_real(key, trim(text.substr(0, slash)));
        const double den = parse_plain_real(key, trim(text.substr(slash + 1)));
        if (den == 0.0) {
            bad_value(key, text, "a fraction with nonzero denominator");
        }
        return num / den;
    }
    const double value = parse_plain_real(key, text);
    if (!std::isfinite(value)) {
        bad_value(key, text, "a finite real number");
    }
    return value;
}

ConfigEntries read_config_entries(std::string_view text) {
    ConfigEntries entries;
    std::set<std::string, std::less<>> seen;
    const auto& keys = config_keys();
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto newline = text.find('\n');
        const std::string_view raw = text.substr(0, newline);
        text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
        }
        std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError(key, "unknown key");
        }
        if (!seen.insert(key).second) {
            throw ConfigError(key, "given more than once");
        }
        entries.emplace_back(std::move(key), value);
    }
    return entries;
}

void apply_entries(ExperimentConfig& c, const ConfigEntries& entries) {
    for (const auto& [key, value] : entries) {
        if (key == "experiment") {
            continue;
        }
        if (key == "n_grid") {
            c.n_grid.clear();
            for (auto item : split_list(value)) {
                c.n_grid.push_back(parse_count(key, item));
            }
        } else if (key == "replicates") {
            c.replicates = parse_count(key, value);
        } else if (key == "p") {
            c.p = parse_real(key, value);
        } else if (key == "hurst") {
            c.hurst = parse_real(key, value);
        } else if (key == "time_points") {
            c.time_points.clear();
            if (!trim(value).empty()) {
                for (auto item : split_list(value)) {
                    c.time_points.push_back(parse_real(key, item));
                }
            }
        } else if (key == "seed") {
            c.master_seed = parse_seed(key, value);
        } else if (key == "ks_level") {
            c.thresholds.ks_level = parse_real(key, value);
        } else if (key == "z_threshold") {
            c.thresholds.z = parse_real(key, value);
        } else if (key == "slope_tolerance") {
            c.thresholds.slope_tolerance = parse_real(key, value);
        } else if (key == "ks_n") {
            c.ks_n = parse_count(key, value);
        } else if (key == "ks_replicates") {
            c.ks_replicates = parse_count(key, value);
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
}

namespace {

// Range checks that do not depend on the experiment, so a fragment without `experiment`
// still reports the offending key first.
void check_key_ranges(const ConfigEntries& entries) {
    ExperimentConfig c;
    apply_entries(c, entries);
    for (const auto& [key, value] : entries) {
        if (key == "hurst" && !(c.hurst > 0.0 && c.hurst < 1.0)) {
            throw ConfigError(key, "must lie in (0,1)");
        }
        if (key == "p" && !(c.p >= 1.0)) {
            throw ConfigError(key, "must be >= 1");
        }
        if (key == "ks_level" && !(c.thresholds.ks_level > 0.0 && c.thresholds.ks_level < 1.0)) {
            throw ConfigError(key, "must lie in (0,1)");
        }
        if (key == "z_threshold" && !(c.thresholds.z >= 0.0)) {
            throw ConfigError(key, "must be >= 0");
        }
        if (key == "slope_tolerance" && !(c.thresholds.slope_tolerance >= 0.0)) {
            throw ConfigError(key, "must be >= 0");
        }
    }
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
    const ConfigEntries entries = read_config_entries(text);
    const auto it = std::find_if(entries.begin(), entries.end(),
                                 [](const auto& e) { return e.first == "experiment"; });
    if (it == entries.end()) {
        check_key_ranges(entries);
        throw ConfigError("experiment", "experiment required");
    }
    ExperimentConfig config = default_config(parse_experiment_kind(it->second));
    apply_entries(config, entries);
    validate(config);
    return config;
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& c) {
    const auto join_counts = [](const std::vector<std::size_t>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += (i ? "," : "") + std::to_string(v[i]);
        }
        return out;
    };
    const auto join_reals = [](const std::vector<double>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += (i ? "," : "") + format_real(v[i]);
        }
        return out;
    };
    return {
        {"experiment", to_string(c.experiment)},
        {"n_grid", join_counts(c.n_grid)},
        {"replicates", std::to_string(c.replicates)},
        {"p", format_real(c.p)},
        {"hurst", format_real(c.hurst)},
        {"time_points", join_reals(c.time_points)},
        {"seed", std::to_string(c.master_seed)},
        {"ks_level", format_real(c.thresholds.ks_level)},
        {"z_threshold", format_real(c.thresholds.z)},
        {"slope_tolerance", format_real(c.thresholds.slope_tolerance)},
        {"ks_n", std::to_string(c.ks_n)},
        {"ks_replicates", std::to_string(c.ks_replicates)},
    };
}

std::string format_config(const ExperimentConfig& c) {
    std::string out;
    for (const auto& [key, value] : config_echo(c)) {
        out += key + "=" + value + "\n";
    }
    return out;
}

}  // namespace s2w
