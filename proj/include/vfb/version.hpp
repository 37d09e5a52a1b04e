#pragma once

namespace vfb {

// Static version string embedded in every output file's meta block.
inline constexpr const char* version = "1.0.0";

} // namespace vfb
