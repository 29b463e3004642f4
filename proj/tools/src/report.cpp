#include "hopfmod/cli/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

namespace hopf::cli {

namespace {

std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::info: return "info";
  }
  return "?";
}

Status status_from(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "info") return Status::info;
  throw std::invalid_argument("bad status " + s);
}

// JSON has no inf/nan; diagnostics can legitimately hit them.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double number_from(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  return s == "inf" ? INFINITY : -INFINITY;
}

}  // namespace

bool Report::pass() const { return failures() == 0; }

int Report::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::fail; }));
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = suite;
  j["pass"] = pass();
  j["failures"] = failures();
  j["timestamp"] = timestamp;
  j["conventions"] = conventions;
  j["config"] = config;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["anchor"] = c.anchor;
    e["status"] = status_name(c.status);
    e["max_residual"] = number(c.max_residual);
    e["tolerance"] = c.tolerance ? number(*c.tolerance) : nlohmann::ordered_json(nullptr);
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j;
}

Report Report::from_json(const nlohmann::ordered_json& j) {
  if (j.value("schema_version", "") != kSchemaVersion) throw std::invalid_argument("unsupported report schema");
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.timestamp = j.value("timestamp", "");
  r.conventions = j.at("conventions");
  r.config = j.at("config");
  for (const auto& e : j.at("checks")) {
    Check c;
    c.id = e.at("id").get<std::string>();
    c.anchor = e.at("anchor").get<std::string>();
    c.status = status_from(e.at("status").get<std::string>());
    c.max_residual = number_from(e.at("max_residual"));
    if (!e.at("tolerance").is_null()) c.tolerance = number_from(e.at("tolerance"));
    c.note = e.value("note", "");
    r.checks.push_back(std::move(c));
  }
  return r;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path write_report(const Report& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto path = dir / ("report_" + r.suite + ".json");
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << r.to_json().dump(2) << '\n';
  if (!out) throw ConfigError("write failed for " + path.string());
  return path;
}

Report merge_reports(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw ConfigError("no such directory " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("report_", 0) == 0 && e.path().extension() == ".json" && name != "report_merged.json" &&
        name != "report_all.json")
      files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no reports to merge in " + dir.string());
  Report merged;
  merged.suite = "merged";
  for (const auto& f : files) {
    std::ifstream in(f);
    nlohmann::ordered_json j;
    try {
      in >> j;
    } catch (const nlohmann::ordered_json::exception& e) {
      throw ConfigError("unreadable report " + f.string() + ": " + e.what());
    }
    Report r;
    try {
      r = Report::from_json(j);
    } catch (const std::exception& e) {
      throw ConfigError("malformed report " + f.string() + ": " + e.what());
    }
    if (merged.conventions.is_null()) {
      merged.conventions = r.conventions;
      merged.config = r.config;
    }
    for (auto& c : r.checks) merged.checks.push_back(std::move(c));
  }
  merged.timestamp = utc_timestamp();
  return merged;
}

std::string canonical_dump(const Report& r) {
  auto j = r.to_json();
  j["timestamp"] = "";
  return j.dump(2);
}

}  // namespace hopf::cli
