#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "svadf/dating.hpp"

namespace svadf::cli {

/// Entry point behind the executable. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "log:<d>", "fixed:<v>" or "table:<calibration csv>".
dating::ThresholdRule parse_threshold(std::string_view text);

}  // namespace svadf::cli
