#pragma once

namespace svadf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace svadf
