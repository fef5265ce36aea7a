#include "ququart/util/log.hpp"

#include <iostream>
#include <mutex>

namespace ququart {

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& current_sink() {
  static WarningSink sink;
  return sink;
}

}  // namespace

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (current_sink()) current_sink()(message);
  else std::cerr << "warning: " << message << '\n';
}

WarningSink set_warning_sink(WarningSink sink) {
  std::lock_guard lock(sink_mutex());
  WarningSink old = std::move(current_sink());
  current_sink() = std::move(sink);
  return old;
}

}  // namespace ququart
