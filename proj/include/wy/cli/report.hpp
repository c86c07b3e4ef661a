#pragma once

// Report assembly and rendering. A report holds the echoed config, free-form
// results, one flat table (the CSV view), verdicts and notices.

#include <string>
#include <utility>
#include <vector>

#include "wy/cli/config.hpp"

namespace wy::cli {

inline constexpr const char* kReportSchema = "wy-stability/report/v1";
inline constexpr const char* kWitnessSchema = "wy-stability/witness/v1";

enum class Status { Pass, Fail, Skip };

const char* to_string(Status s) noexcept;

struct Verdict {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

/// A double, or null when not finite.
Json number(double v);

class Report {
 public:
  Report(std::string command, Json config);

  Json& results() noexcept { return results_; }
  const Json& results() const noexcept { return results_; }

  void set_columns(std::vector<std::string> columns);
  /// Throws std::logic_error if the row width differs from the columns.
  void add_row(std::vector<Json> cells);

  void add_verdict(std::string name, bool pass, std::string detail = {});
  void add_skip(std::string name, std::string detail);
  void add_notice(std::string text);
  void add_timing(std::string name, double seconds);

  const std::vector<Verdict>& verdicts() const noexcept { return verdicts_; }
  const std::vector<std::string>& notices() const noexcept { return notices_; }

  /// True when no verdict failed.
  bool passed() const noexcept;
  int exit_code() const noexcept { return passed() ? 0 : 1; }

  Json to_json(bool include_timings) const;
  std::string to_csv() const;
  std::string render(OutputFormat format, bool include_timings) const;

 private:
  std::string command_;
  Json config_;
  Json results_ = Json::object();
  std::vector<std::string> columns_;
  std::vector<std::vector<Json>> rows_;
  std::vector<Verdict> verdicts_;
  std::vector<std::string> notices_;
  std::vector<std::pair<std::string, double>> timings_;
};

/// Writes text to path, or to stdout when path is empty. Throws
/// std::runtime_error naming the path on failure.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace wy::cli
