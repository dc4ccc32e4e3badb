#pragma once

// Single source of the tool version stamped into every output header.
#define QCLOCK_VERSION "1.0.0"

namespace qclock {

inline constexpr const char* kVersion = QCLOCK_VERSION;

}  // namespace qclock
