#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace onto {

/// One verdict-bearing number: pass iff |value - expected| <= tolerance.
/// Reports stay self-auditing because the three numbers travel with the flag.
struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

Check make_check(std::string name, double value, double expected, double tolerance);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Machine-readable verification report. The JSON body is byte-stable for a
/// given config; the timestamp lives in the separate meta object.
struct Report {
  std::string scenario;
  int schema_version = 1;
  std::vector<Check> checks;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
  CsvTable table;

  bool pass() const;
  nlohmann::ordered_json body() const;
  std::string render_json(bool include_meta = true) const;
  std::string render_csv() const;
};

/// %.12g by default (stable across platforms for the values we emit).
std::string format_sig(double value, int significant_digits = 12);

}  // namespace onto
