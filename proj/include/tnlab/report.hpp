#pragma once

// Machine-readable run reports.  One JSON document per command with keys in
// fixed order (command, config, checks, findings, version, duration_ms);
// everything except duration_ms is byte-reproducible for a given config and
// seed.  CSV side files use 17 significant digits and LF endings.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace tnlab {

using Json = nlohmann::ordered_json;

enum class CheckKind { kLess, kGreater, kEquals };

// A failing "hard" check drives the exit code to 2; a failing "finding"
// check only downgrades its status.
struct CheckRecord {
  std::string name;
  std::string status;  // "pass", "fail", or "finding"
  double value = 0.0;
  double threshold = 0.0;
  std::string comparison;  // "lt", "gt", "eq"
};

class Report {
 public:
  Report(std::string command, Json config_echo);

  void add_check(const std::string& name, double value, double threshold,
                 CheckKind kind, bool finding_only = false);
  void add_finding(const std::string& name, Json detail);

  void set_duration_ms(std::int64_t ms) { duration_ms_ = ms; }

  bool all_passed() const;
  int exit_code() const { return all_passed() ? 0 : 2; }

  Json to_json() const;
  std::string to_string() const;  // pretty-printed, trailing newline

 private:
  std::string command_;
  Json config_;
  std::vector<CheckRecord> checks_;
  std::vector<Json> findings_;
  std::int64_t duration_ms_ = 0;
};

// Reparses a report document and drops the duration key; used by the
// double-run determinism comparison.
std::string strip_duration(const std::string& report_text);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void write_header(std::span<const std::string> names);
  void write_row(std::span<const double> values);
  void write_text_row(std::span<const std::string> cells);

 private:
  std::ostream& out_;
};

}  // namespace tnlab
