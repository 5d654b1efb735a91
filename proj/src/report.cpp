#include "onto/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>

namespace onto {

Check make_check(std::string name, double value, double expected, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.expected = expected;
  c.tolerance = tolerance;
  c.pass = std::abs(value - expected) <= tolerance;
  return c;
}

bool Report::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

nlohmann::ordered_json Report::body() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["schema_version"] = schema_version;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"value", c.value},
                   {"expected", c.expected},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  j["checks"] = arr;
  j["detail"] = detail;
  j["pass"] = pass();
  return j;
}

std::string Report::render_json(bool include_meta) const {
  nlohmann::ordered_json j;
  if (include_meta) {
    char stamp[32];
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    j["meta"] = {{"tool", "ontoverlap"}, {"generated_at", stamp}};
  }
  j["report"] = body();
  return j.dump(2) + "\n";
}

std::string Report::render_csv() const {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

std::string format_sig(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

}  // namespace onto
