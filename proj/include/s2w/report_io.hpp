#pragma once

#include "s2w/experiments.hpp"

#include <string>
#include <utility>
#include <vector>

namespace s2w {

/// Extra key/value lines echoed ahead of CSV output (subcommand, flags, ...).
using EchoLines = std::vector<std::pair<std::string, std::string>>;

/// "# key=value" lines.
std::string csv_echo(const EchoLines& lines);

/// JSON document: {"config": {...}, "checks": [...], "pass": bool, and for scaling
/// campaigns "scaling" and "slope_fit"}. Wall time is not included.
std::string report_to_json(const Report& report);

/// Config echo lines, then "check_id,kind,statistic,p_value,z_score,target,threshold,pass".
/// Inapplicable fields are left empty.
std::string report_to_csv(const Report& report);

/// Config echo, then "n,mean_sup,standard_error" rows, then the slope fit as echo lines.
std::string scaling_to_csv(const Report& report);

/// Single CSV record for one check (no trailing newline).
std::string stat_report_csv_row(const StatReport& s);
std::string stat_report_csv_header();

}  // namespace s2w
