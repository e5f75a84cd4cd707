#pragma once

#include <string>
#include <vector>

namespace hass::cli {

// Dispatches one invocation. Exit code 0 on success, 1 on verification
// failure (a failed check, an unauthorized coalition), 2 on usage errors.
int run(const std::vector<std::string>& args);

} // namespace hass::cli
