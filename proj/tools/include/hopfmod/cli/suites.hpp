#pragma once

#include <string>
#include <vector>

#include "hopfmod/cli/report.hpp"

namespace hopf::cli {

const std::vector<std::string>& suite_names();  // algebra, vaisman, lorentz, charges, quantize, all

// Runs the suite without touching the file system. Throws ConfigError for unknown names.
Report run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace hopf::cli
