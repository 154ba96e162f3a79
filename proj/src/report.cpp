#include "tnlab/report.hpp"

#include <cstdio>

#include "tnlab/version.hpp"

namespace tnlab {

Report::Report(std::string command, Json config_echo)
    : command_(std::move(command)), config_(std::move(config_echo)) {}

void Report::add_check(const std::string& name, double value, double threshold,
                       CheckKind kind, bool finding_only) {
  bool ok = false;
  const char* cmp = "lt";
  switch (kind) {
    case CheckKind::kLess:
      ok = value < threshold;
      cmp = "lt";
      break;
    case CheckKind::kGreater:
      ok = value > threshold;
      cmp = "gt";
      break;
    case CheckKind::kEquals:
      ok = value == threshold;
      cmp = "eq";
      break;
  }
  checks_.push_back(CheckRecord{name, ok ? "pass" : (finding_only ? "finding" : "fail"),
                                value, threshold, cmp});
}

void Report::add_finding(const std::string& name, Json detail) {
  Json f;
  f["name"] = name;
  f["detail"] = std::move(detail);
  findings_.push_back(std::move(f));
}

bool Report::all_passed() const {
  for (const auto& c : checks_)
    if (c.status == "fail") return false;
  return true;
}

Json Report::to_json() const {
  Json doc;
  doc["command"] = command_;
  doc["config"] = config_;
  doc["checks"] = Json::array();
  for (const auto& c : checks_) {
    Json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    jc["value"] = c.value;
    jc["threshold"] = c.threshold;
    jc["comparison"] = c.comparison;
    doc["checks"].push_back(std::move(jc));
  }
  doc["findings"] = Json::array();
  for (const auto& f : findings_) doc["findings"].push_back(f);
  doc["version"] = kToolVersion;
  doc["duration_ms"] = duration_ms_;
  return doc;
}

std::string Report::to_string() const { return to_json().dump(2) + "\n"; }

std::string strip_duration(const std::string& report_text) {
  Json doc = Json::parse(report_text);
  doc.erase("duration_ms");
  return doc.dump(2) + "\n";
}

void CsvWriter::write_header(std::span<const std::string> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out_ << ',';
    out_ << names[i];
  }
  out_ << '\n';
}

void CsvWriter::write_row(std::span<const double> values) {
  char buf[40];
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    out_ << buf;
  }
  out_ << '\n';
}

void CsvWriter::write_text_row(std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace tnlab
