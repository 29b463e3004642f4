#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hopfmod/cli/config.hpp"

namespace hopf::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum class Status { pass, fail, info };

struct Check {
  std::string id;
  std::string anchor;  // what the check is about, e.g. "lck.lee_identity"
  Status status = Status::info;
  double max_residual = 0.0;
  std::optional<double> tolerance;  // absent for diagnostics
  std::string note;
};

struct Report {
  std::string suite;
  std::vector<Check> checks;
  nlohmann::ordered_json config;
  nlohmann::ordered_json conventions;
  std::string timestamp;

  bool pass() const;
  int failures() const;
  nlohmann::ordered_json to_json() const;
  static Report from_json(const nlohmann::ordered_json& j);
};

// Writes <dir>/report_<suite>.json; throws ConfigError when the directory is unusable.
std::filesystem::path write_report(const Report& r, const std::filesystem::path& dir);
// Concatenates the checks of every per-suite report_*.json in dir (sorted by name);
// report_all.json and report_merged.json are skipped since they would duplicate checks.
Report merge_reports(const std::filesystem::path& dir);

// The serialised report with the timestamp blanked, for reproducibility comparisons.
std::string canonical_dump(const Report& r);

std::string utc_timestamp();

}  // namespace hopf::cli
