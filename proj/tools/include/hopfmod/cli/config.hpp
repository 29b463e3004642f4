#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace hopf::cli {

// Bad configuration or unusable paths; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double exact = 1e-10;
  double first = 1e-6;   // first-derivative checks
  double second = 1e-4;  // second-derivative checks
};

struct Samples {
  int quaternion_pairs = 1000;
  int hypercomplex_units = 100;
  int jordan_samples = 100;
  int vaisman_points = 100;
  int holonomy_loops = 20;
  double holonomy_side = 0.1;
  int lorentz_points = 40;
  int section_points = 20;
  int random_germs = 50;
};

struct LorentzConfig {
  std::vector<std::string> profiles = {"zero", "constant", "gaussian"};
  double amplitude = 0.3;  // constant profile
  double pulse_amplitude = 0.5;
  double pulse_center = 0.0;
  double pulse_width = 0.5;
  double half_width = 1.0;  // region [-w, w]^4
  int grid_nodes = 10;
  int substeps = 2;
};

struct RunConfig {
  std::uint64_t seed = 1;
  int workers = 1;
  double lambda = 2.0;
  double tolerance_scale = 1.0;
  int germ_max_degree = 4;
  Tolerances tol;
  Samples samples;
  LorentzConfig lorentz;
  std::filesystem::path output_dir = "hopfmod-out";
  std::filesystem::path golden_table;  // empty: built-in location

  // Throws ConfigError.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

// Missing keys keep their defaults; unknown keys are rejected.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& toml_text);

std::filesystem::path default_golden_table();

}  // namespace hopf::cli
