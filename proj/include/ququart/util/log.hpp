#pragma once

#include <functional>
#include <string_view>

namespace ququart {

using WarningSink = std::function<void(std::string_view)>;

/// Reports a non-fatal condition. Thread-safe; defaults to stderr.
void warn(std::string_view message);
/// Replaces the sink and returns the previous one. An empty sink restores stderr.
WarningSink set_warning_sink(WarningSink sink);

}  // namespace ququart
