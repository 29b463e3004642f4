#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hopfmod/charges.hpp"
#include "hopfmod/cli/suites.hpp"
#include "hopfmod/cli/table_io.hpp"

namespace {

using namespace hopf::cli;

void print_summary(const Report& rep, double seconds) {
  for (const auto& c : rep.checks) {
    const char* s = c.status == Status::pass ? "pass" : c.status == Status::fail ? "FAIL" : "info";
    std::cout << s << "  " << c.id << "  " << c.max_residual;
    if (c.tolerance) std::cout << " (tol " << *c.tolerance << ")";
    std::cout << '\n';
  }
  std::cout << rep.suite << ": " << (rep.pass() ? "PASS" : "FAIL") << ", " << rep.failures() << " failing of "
            << rep.checks.size() << " checks, " << seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification harness for the hopfmod geometry library"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  double tol_scale = 0.0;
  app.add_option("--config", config_path, "TOML config file (falls back to $HOPFMOD_CONFIG)");
  app.add_option("--seed", seed, "override the configured seed");
  app.add_option("--out", out_dir, "output directory for reports and tables");
  app.add_option("--tolerance-scale", tol_scale, "multiply every tolerance")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  verify->add_option("suite", suite, "algebra, vaisman, lorentz, charges, quantize or all")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  bool quiet = false;
  verify->add_flag("--quiet", quiet, "print only the summary line");

  auto* table = app.add_subcommand("table", "emit the charge table");
  std::string format = "text";
  table->add_option("--format", format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));

  auto* report = app.add_subcommand("report", "combine reports");
  bool merge = false;
  report->add_flag("--merge", merge, "merge every report_*.json in the output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (config_path.empty())
      if (const char* env = std::getenv("HOPFMOD_CONFIG"); env != nullptr && *env != '\0') config_path = env;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--tolerance-scale")) cfg.tolerance_scale = tol_scale;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.validate();

    if (*verify) {
      const auto t0 = std::chrono::steady_clock::now();
      const Report rep = run_suite(suite, cfg);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto path = write_report(rep, cfg.output_dir);
      if (quiet) {
        std::cout << rep.suite << ": " << (rep.pass() ? "PASS" : "FAIL") << '\n';
      } else {
        print_summary(rep, secs);
      }
      std::cout << "report: " << path.string() << '\n';
      return rep.pass() ? 0 : 1;
    }
    if (*table) {
      const TableFormat f = parse_table_format(format);
      const std::string text = emit_table(hopf::generate_table(), f);
      if (out_dir.empty()) {
        std::cout << text;
        return 0;
      }
      std::error_code ec;
      std::filesystem::create_directories(cfg.output_dir, ec);
      const auto path = cfg.output_dir / ("table." + table_extension(f));
      std::ofstream out(path);
      if (ec || !out) throw ConfigError("cannot write " + path.string());
      out << text;
      std::cout << path.string() << '\n';
      return 0;
    }
    if (*report) {
      Report merged = merge_reports(cfg.output_dir);
      const auto path = write_report(merged, cfg.output_dir);
      std::cout << "merged " << merged.checks.size() << " checks: " << (merged.pass() ? "PASS" : "FAIL") << '\n'
                << "report: " << path.string() << '\n';
      return merged.pass() ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
