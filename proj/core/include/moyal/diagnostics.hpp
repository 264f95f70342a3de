#pragma once

#include <string_view>

namespace moyal {

using WarningSink = void (*)(std::string_view message);

// The sink is a process-wide atomic pointer; the default writes to stderr.
// Passing nullptr silences warnings.
void set_warning_sink(WarningSink sink) noexcept;
WarningSink warning_sink() noexcept;

void warn(std::string_view message);

}  // namespace moyal
