#include "hopfmod/cli/suites.hpp"

#include "hopfmod/algebra.hpp"
#include "hopfmod/vaisman.hpp"
#include "suite_support.hpp"

namespace hopf::cli {

namespace {

nlohmann::ordered_json conventions_echo(const RunConfig& cfg) {
  const VaismanStructure lck = VaismanStructure::lck(cfg.lambda);
  const WeylConnection wc{lck, {}};
  const double c = weyl_metric_ratio(wc, Point(lck.chart, (Vec(8) << 1.0, 0.3, -0.4, 0.2, 0.5, -0.1, 0.7, 0.25).finished()));
  nlohmann::ordered_json j;
  j["metric_signature"] = std::string(conventions::signature);
  j["spinor_ordering"] = std::string(conventions::spinor_ordering);
  j["gamma5"] = "i g0 g1 g2 g3 = diag(-1,-1,+1,+1); upper block has gamma5 = -1";
  j["quaternion_c2"] = std::string(conventions::quaternion_c2);
  j["hypercomplex_actions"] = "negative: X -> uX, positive: X -> -Xu";
  j["vaisman_metric"] = "b = e / |x|^2 on R^8 minus a ball of radius 0.1";
  j["lee_form"] = "theta = s d log|x|^2";
  j["lee_sign"] = lck.lee_sign;
  j["weyl_connection"] = "nabla^LC + (b (x) theta# - theta (x) Id - Id (x) theta) / 2";
  j["weyl_constant"] = std::round(c);
  j["distribution_reading"] = "kernel intersection";
  j["spinor_pairing"] = "Dirac pairing psi^dagger gamma^0 phi for currents";
  j["pp_wave"] = "g = 2 du dv - a(u)(x^2 + y^2) du^2 - dx^2 - dy^2";
  j["coupling_slice"] = "Gamma^0 = e^0_mu Gamma^mu (timelike coframe)";
  j["germ_truncation"] = "z-degree <= d and q-degree <= min(d, 6)";
  j["operator_ordering"] = "create = multiplication, annihilate = derivation; [Z^i, z^j] = delta";
  return j;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"algebra", "vaisman", "lorentz", "charges", "quantize", "all"};
  return names;
}

Report run_suite(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  Report rep;
  rep.suite = name;
  rep.config = cfg.to_json();
  Recorder r(cfg, rep);
  const bool all = name == "all";
  bool known = all;
  if (all || name == "algebra") known = true, run_algebra(r);
  if (all || name == "vaisman") known = true, run_vaisman(r);
  if (all || name == "lorentz") known = true, run_lorentz(r);
  if (all || name == "charges") known = true, run_charges(r);
  if (all || name == "quantize") known = true, run_quantize(r);
  if (!known) throw ConfigError("unknown suite " + name);
  rep.conventions = conventions_echo(cfg);
  rep.timestamp = utc_timestamp();
  return rep;
}

}  // namespace hopf::cli
