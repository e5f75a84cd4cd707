#pragma once

namespace hass {

// Execution policy for the exhaustive verification kernels. Every parallel
// kernel has a serial twin with identical output; tests compare the two and
// the bench target measures them against each other.
enum class Exec { Serial, Parallel };

} // namespace hass
