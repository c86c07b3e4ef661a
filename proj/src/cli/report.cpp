#include "wy/cli/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace wy::cli {

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

void check_finite(const Json& j, const std::string& where) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw std::logic_error("non-finite number in report at " + where);
  }
  if (j.is_structured()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      check_finite(*it, j.is_object() ? where + "/" + it.key() : where + "/[]");
    }
  }
}

}  // namespace

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Skip:
      return "SKIP";
  }
  return "FAIL";
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Report::Report(std::string command, Json config)
    : command_(std::move(command)), config_(std::move(config)) {}

void Report::set_columns(std::vector<std::string> columns) {
  columns_ = std::move(columns);
  rows_.clear();
}

void Report::add_row(std::vector<Json> cells) {
  if (cells.size() != columns_.size()) {
    throw std::logic_error("row has " + std::to_string(cells.size()) + " cells, table has " +
                           std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(std::move(cells));
}

void Report::add_verdict(std::string name, bool pass, std::string detail) {
  verdicts_.push_back({std::move(name), pass ? Status::Pass : Status::Fail, std::move(detail)});
}

void Report::add_skip(std::string name, std::string detail) {
  verdicts_.push_back({std::move(name), Status::Skip, std::move(detail)});
}

void Report::add_notice(std::string text) { notices_.push_back(std::move(text)); }

void Report::add_timing(std::string name, double seconds) {
  timings_.emplace_back(std::move(name), seconds);
}

bool Report::passed() const noexcept {
  for (const auto& v : verdicts_) {
    if (v.status == Status::Fail) return false;
  }
  return true;
}

Json Report::to_json(bool include_timings) const {
  Json j;
  j["schema"] = kReportSchema;
  j["command"] = command_;
  j["config"] = config_;
  j["results"] = results_;
  Json table;
  table["columns"] = columns_;
  table["rows"] = Json::array();
  for (const auto& row : rows_) table["rows"].push_back(row);
  j["table"] = std::move(table);
  j["verdicts"] = Json::array();
  for (const auto& v : verdicts_) {
    j["verdicts"].push_back({{"name", v.name}, {"status", to_string(v.status)}, {"detail", v.detail}});
  }
  j["notices"] = notices_;
  j["verdict"] = passed() ? "PASS" : "FAIL";
  if (include_timings) {
    Json t = Json::object();
    for (const auto& [name, s] : timings_) t[name] = s;
    j["timings"] = std::move(t);
  }
  check_finite(j, "");
  return j;
}

std::string Report::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string Report::render(OutputFormat format, bool include_timings) const {
  if (format == OutputFormat::Csv) return to_csv();
  return to_json(include_timings).dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw std::runtime_error("read from '" + path + "' failed");
  return ss.str();
}

}  // namespace wy::cli
