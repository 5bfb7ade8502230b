#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace hqgrass::health {

// Numerical-health events: degenerate clustering gaps, clamps far from the
// valid range, verification failures of results that are guaranteed in exact
// arithmetic. They never abort a computation; callers that care (the CLI, the
// self test) inspect the counter.

using Handler = std::function<void(const std::string&)>;

void warn(const std::string& message);
std::uint64_t warning_count();
void reset_warning_count();
void set_handler(Handler handler);  // pass nullptr to restore stderr default

}  // namespace hqgrass::health
