#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hml {

enum class LogLevel { info, warning };

using LogSink = std::function<void(LogLevel, std::string_view)>;

/// Replaces the process-wide sink.  The default writes warnings to stderr
/// and drops info messages.  Returns the previous sink.
LogSink set_log_sink(LogSink sink);

void log_info(std::string_view message);
void warn(std::string_view message);

/// Collects every message emitted while alive; restores the previous sink
/// on destruction.
class ScopedLogCapture {
 public:
  ScopedLogCapture();
  ~ScopedLogCapture();
  ScopedLogCapture(const ScopedLogCapture&) = delete;
  ScopedLogCapture& operator=(const ScopedLogCapture&) = delete;

  const std::vector<std::string>& warnings() const { return warnings_; }
  bool contains(std::string_view needle) const;

 private:
  LogSink previous_;
  std::vector<std::string> warnings_;
};

}  // namespace hml
