#include "s2w/format.hpp"

#include <fmt/format.h>

namespace s2w {

std::string format_real(double value) {
    return fmt::format("{:.17g}", value);
}

std::string format_short(double value) {
    return fmt::format("{:g}", value);
}

}  // namespace s2w
