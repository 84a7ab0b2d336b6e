#pragma once

#include <string>

namespace spindip {

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

}  // namespace spindip
