#include "hml/log.hpp"

#include <iostream>
#include <mutex>

namespace hml {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

void default_sink(LogLevel level, std::string_view message) {
  if (level == LogLevel::warning) std::cerr << "hml: warning: " << message << '\n';
}

LogSink& current_sink() {
  static LogSink sink = default_sink;
  return sink;
}

void emit(LogLevel level, std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (current_sink()) current_sink()(level, message);
}

}  // namespace

LogSink set_log_sink(LogSink sink) {
  std::lock_guard lock(sink_mutex());
  LogSink previous = std::move(current_sink());
  current_sink() = std::move(sink);
  return previous;
}

void log_info(std::string_view message) { emit(LogLevel::info, message); }
void warn(std::string_view message) { emit(LogLevel::warning, message); }

ScopedLogCapture::ScopedLogCapture() {
  previous_ = set_log_sink([this](LogLevel level, std::string_view message) {
    if (level == LogLevel::warning) warnings_.emplace_back(message);
  });
}

ScopedLogCapture::~ScopedLogCapture() { set_log_sink(std::move(previous_)); }

bool ScopedLogCapture::contains(std::string_view needle) const {
  for (const auto& w : warnings_)
    if (w.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace hml
