#pragma once

#include <string>

namespace s2w {

/// Round-trip exact decimal form of a double (17 significant digits).
std::string format_real(double value);

/// Compact form for identifiers ("0.25", "1e-06").
std::string format_short(double value);

}  // namespace s2w
