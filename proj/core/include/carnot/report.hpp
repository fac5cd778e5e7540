#ifndef CARNOT_REPORT_HPP
#define CARNOT_REPORT_HPP

#include <string>
#include <vector>

namespace carnot {

/// Ordered key/value run report. The text body is deterministic for
/// fixed inputs and seed; wall time is emitted on a separate line that
/// callers comparing outputs are expected to strip.
class RunReport {
 public:
  explicit RunReport(std::string command) : command_(std::move(command)) {}

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, long value);
  void add(const std::string& key, double value);
  void add(const std::string& key, bool value);

  /// Structured text: "key: value" lines after a command echo.
  std::string text(double wall_seconds) const;
  /// Machine-readable body (keys in insertion order).
  std::string json(double wall_seconds) const;

  const std::string& value(const std::string& key) const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace carnot

#endif
