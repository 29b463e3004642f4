#include "hopfmod/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "toml.hpp"

#ifndef HOPFMOD_GOLDEN_TABLE
#define HOPFMOD_GOLDEN_TABLE "table_golden.csv"
#endif

namespace hopf::cli {

namespace {

void reject_unknown(const toml::table& t, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [k, v] : t) {
    if (!known.count(std::string(k.str()))) throw ConfigError("unknown config key " + where + std::string(k.str()));
  }
}

template <typename T>
void read(const toml::table& t, const char* key, T& out, const std::string& where) {
  const toml::node* n = t.get(key);
  if (n == nullptr) return;
  if constexpr (std::is_same_v<T, double>) {
    if (auto v = n->value<double>()) {
      out = *v;
      return;
    }
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (auto v = n->value<std::string>()) {
      out = *v;
      return;
    }
  } else {
    if (auto v = n->value<std::int64_t>()) {
      if (*v < 0 && std::is_unsigned_v<T>) throw ConfigError(where + key + " must be non-negative");
      out = static_cast<T>(*v);
      return;
    }
  }
  throw ConfigError("wrong type for " + where + key);
}

const toml::table* sub(const toml::table& t, const char* key) {
  const toml::node* n = t.get(key);
  if (n == nullptr) return nullptr;
  if (!n->is_table()) throw ConfigError(std::string("[") + key + "] must be a table");
  return n->as_table();
}

}  // namespace

std::filesystem::path default_golden_table() { return HOPFMOD_GOLDEN_TABLE; }

void RunConfig::validate() const {
  if (!(lambda > 1.0)) throw ConfigError("lambda must exceed 1");
  if (!(tol.exact > 0.0) || !(tol.first > 0.0) || !(tol.second > 0.0))
    throw ConfigError("tolerances must be positive");
  if (tol.exact > tol.first || tol.first > tol.second)
    throw ConfigError("tolerance tiers must satisfy exact <= first <= second");
  if (!(tolerance_scale > 0.0)) throw ConfigError("tolerance scale must be positive");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (germ_max_degree < 2 || germ_max_degree > 8) throw ConfigError("germ max degree must lie in [2, 8]");
  const Samples& s = samples;
  if (s.quaternion_pairs < 1 || s.hypercomplex_units < 1 || s.jordan_samples < 1 || s.vaisman_points < 1 ||
      s.holonomy_loops < 1 || s.lorentz_points < 1 || s.section_points < 1 || s.random_germs < 1)
    throw ConfigError("sample counts must be positive");
  if (!(s.holonomy_side > 0.0) || s.holonomy_side > 0.5) throw ConfigError("holonomy side must lie in (0, 0.5]");
  if (lorentz.profiles.empty()) throw ConfigError("no lorentz profiles");
  for (const auto& p : lorentz.profiles)
    if (p != "zero" && p != "constant" && p != "gaussian") throw ConfigError("unknown profile " + p);
  if (!(lorentz.pulse_width > 0.0)) throw ConfigError("pulse width must be positive");
  if (!(lorentz.half_width > 0.0)) throw ConfigError("region half width must be positive");
  if (lorentz.grid_nodes < 2 || lorentz.substeps < 1) throw ConfigError("lorentz grid too coarse");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["workers"] = workers;
  j["lambda"] = lambda;
  j["tolerance_scale"] = tolerance_scale;
  j["germ_max_degree"] = germ_max_degree;
  j["tolerances"] = {{"exact", tol.exact}, {"first", tol.first}, {"second", tol.second}};
  j["samples"] = {{"quaternion_pairs", samples.quaternion_pairs},
                  {"hypercomplex_units", samples.hypercomplex_units},
                  {"jordan_samples", samples.jordan_samples},
                  {"vaisman_points", samples.vaisman_points},
                  {"holonomy_loops", samples.holonomy_loops},
                  {"holonomy_side", samples.holonomy_side},
                  {"lorentz_points", samples.lorentz_points},
                  {"section_points", samples.section_points},
                  {"random_germs", samples.random_germs}};
  j["lorentz"] = {{"profiles", lorentz.profiles},
                  {"amplitude", lorentz.amplitude},
                  {"pulse_amplitude", lorentz.pulse_amplitude},
                  {"pulse_center", lorentz.pulse_center},
                  {"pulse_width", lorentz.pulse_width},
                  {"half_width", lorentz.half_width},
                  {"grid_nodes", lorentz.grid_nodes},
                  {"substeps", lorentz.substeps}};
  return j;
}

RunConfig parse_config(const std::string& toml_text) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "config parse error: " << e.description() << " at line " << e.source().begin.line;
    throw ConfigError(os.str());
  }
  RunConfig c;
  reject_unknown(root, {"seed", "workers", "lambda", "tolerance_scale", "germ_max_degree", "output_dir",
                        "golden_table", "tolerances", "samples", "lorentz"},
                 "");
  read(root, "seed", c.seed, "");
  read(root, "workers", c.workers, "");
  read(root, "lambda", c.lambda, "");
  read(root, "tolerance_scale", c.tolerance_scale, "");
  read(root, "germ_max_degree", c.germ_max_degree, "");
  std::string s;
  read(root, "output_dir", s, "");
  if (!s.empty()) c.output_dir = s;
  s.clear();
  read(root, "golden_table", s, "");
  if (!s.empty()) c.golden_table = s;

  if (const auto* t = sub(root, "tolerances")) {
    reject_unknown(*t, {"exact", "first", "second"}, "tolerances.");
    read(*t, "exact", c.tol.exact, "tolerances.");
    read(*t, "first", c.tol.first, "tolerances.");
    read(*t, "second", c.tol.second, "tolerances.");
  }
  if (const auto* t = sub(root, "samples")) {
    const std::string w = "samples.";
    reject_unknown(*t, {"quaternion_pairs", "hypercomplex_units", "jordan_samples", "vaisman_points", "holonomy_loops",
                        "holonomy_side", "lorentz_points", "section_points", "random_germs"},
                   w);
    read(*t, "quaternion_pairs", c.samples.quaternion_pairs, w);
    read(*t, "hypercomplex_units", c.samples.hypercomplex_units, w);
    read(*t, "jordan_samples", c.samples.jordan_samples, w);
    read(*t, "vaisman_points", c.samples.vaisman_points, w);
    read(*t, "holonomy_loops", c.samples.holonomy_loops, w);
    read(*t, "holonomy_side", c.samples.holonomy_side, w);
    read(*t, "lorentz_points", c.samples.lorentz_points, w);
    read(*t, "section_points", c.samples.section_points, w);
    read(*t, "random_germs", c.samples.random_germs, w);
  }
  if (const auto* t = sub(root, "lorentz")) {
    const std::string w = "lorentz.";
    reject_unknown(*t, {"profiles", "amplitude", "pulse_amplitude", "pulse_center", "pulse_width", "half_width",
                        "grid_nodes", "substeps"},
                   w);
    if (const toml::node* n = t->get("profiles")) {
      const toml::array* arr = n->as_array();
      if (arr == nullptr) throw ConfigError("lorentz.profiles must be an array of strings");
      c.lorentz.profiles.clear();
      for (const auto& e : *arr) {
        auto v = e.value<std::string>();
        if (!v) throw ConfigError("lorentz.profiles must be an array of strings");
        c.lorentz.profiles.push_back(*v);
      }
    }
    read(*t, "amplitude", c.lorentz.amplitude, w);
    read(*t, "pulse_amplitude", c.lorentz.pulse_amplitude, w);
    read(*t, "pulse_center", c.lorentz.pulse_center, w);
    read(*t, "pulse_width", c.lorentz.pulse_width, w);
    read(*t, "half_width", c.lorentz.half_width, w);
    read(*t, "grid_nodes", c.lorentz.grid_nodes, w);
    read(*t, "substeps", c.lorentz.substeps, w);
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace hopf::cli
