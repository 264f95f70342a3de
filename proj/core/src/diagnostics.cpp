#include "moyal/diagnostics.hpp"

#include <atomic>
#include <iostream>

namespace moyal {
namespace {

void stderr_sink(std::string_view message) {
  std::cerr << "moyal: warning: " << message << '\n';
}

std::atomic<WarningSink> g_sink{&stderr_sink};

}  // namespace

void set_warning_sink(WarningSink sink) noexcept { g_sink.store(sink); }

WarningSink warning_sink() noexcept { return g_sink.load(); }

void warn(std::string_view message) {
  if (auto sink = g_sink.load()) sink(message);
}

}  // namespace moyal
