#include "carnot/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace carnot {

void RunReport::add(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, value);
}

void RunReport::add(const std::string& key, long value) {
  fields_.emplace_back(key, std::to_string(value));
}

void RunReport::add(const std::string& key, double value) {
  std::ostringstream ss;
  ss.precision(12);
  ss << value;
  fields_.emplace_back(key, ss.str());
}

void RunReport::add(const std::string& key, bool value) {
  fields_.emplace_back(key, value ? "true" : "false");
}

std::string RunReport::text(double wall_seconds) const {
  std::ostringstream out;
  out << "command: " << command_ << "\n";
  for (const auto& [k, v] : fields_) out << k << ": " << v << "\n";
  out << "wall_time_s: " << wall_seconds << "\n";
  return out.str();
}

std::string RunReport::json(double wall_seconds) const {
  nlohmann::ordered_json doc;
  doc["command"] = command_;
  for (const auto& [k, v] : fields_) doc[k] = v;
  doc["wall_time_s"] = wall_seconds;
  return doc.dump(2) + "\n";
}

const std::string& RunReport::value(const std::string& key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return v;
  throw std::out_of_range("report has no field " + key);
}

}  // namespace carnot
