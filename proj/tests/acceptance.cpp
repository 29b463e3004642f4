// Acceptance driver: one pass/fail line per criterion. Usage: hopfmod_acceptance <hopfmod-exe> <scratch-dir>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "hopfmod/cli/suites.hpp"
#include "hopfmod/cli/table_io.hpp"

namespace fs = std::filesystem;
using namespace hopf::cli;

namespace {

struct Need {
  std::string id;
  std::optional<double> max;  // residual bound at the criterion's tolerance; empty for diagnostics
  bool diagnostic = false;
};

struct Timed {
  Report rep;
  double seconds = 0.0;
};

Timed timed_suite(const std::string& name, const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r = run_suite(name, cfg);
  return {std::move(r), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& cmd) {
  const int s = std::system(cmd.c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

// Every required check must exist and pass; bounded checks must also sit under the stated bound.
std::string evaluate(const Report& r, const std::vector<Need>& needs) {
  std::map<std::string, const Check*> by_id;
  for (const auto& c : r.checks) by_id[c.id] = &c;
  std::ostringstream bad;
  for (const auto& n : needs) {
    const auto it = by_id.find(n.id);
    if (it == by_id.end()) {
      bad << " missing " << n.id << ";";
      continue;
    }
    const Check& c = *it->second;
    if (n.diagnostic) continue;
    if (c.status != Status::pass) bad << " " << n.id << " failed (" << c.max_residual << ");";
    else if (n.max && !(c.max_residual <= *n.max))
      bad << " " << n.id << " residual " << c.max_residual << " above " << *n.max << ";";
  }
  return bad.str();
}

int failures = 0;

void line(int number, const std::string& title, const std::string& problems, double seconds, double budget) {
  std::string p = problems;
  if (seconds > budget) p += " runtime " + std::to_string(seconds) + " s over " + std::to_string(budget) + " s;";
  const bool ok = p.empty();
  failures += !ok;
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << "  [" << seconds << " s]";
  if (!ok) std::cout << "  --" << p;
  std::cout << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: hopfmod_acceptance <hopfmod-exe> <scratch-dir>\n";
    return 2;
  }
  const std::string exe = argv[1];
  const fs::path dir = argv[2];
  fs::remove_all(dir);
  fs::create_directories(dir);

  const RunConfig cfg;  // defaults carry the criterion tolerances and sample counts
  try {
    // 1. charge table
    {
      const auto t0 = std::chrono::steady_clock::now();
      const int rc = shell(exe + " --out " + (dir / "table").string() + " table --format csv >/dev/null");
      std::string problems;
      if (rc != 0) problems += " table command exited " + std::to_string(rc) + ";";
      else {
        const auto emitted = parse_csv_table(slurp(dir / "table" / "table.csv"));
        const auto golden = parse_csv_table(slurp(default_golden_table()));
        if (emitted.size() != 16) problems += " expected 16 rows;";
        if (emitted != golden) problems += " emitted table differs from golden file;";
        for (const auto& r : emitted) {
          if (r.two_Y != r.Y_C + r.Y_S) problems += " 2Y sum broken for " + r.species + ";";
          if (r.Q != (r.four_T3 + r.two_Y) / 4) problems += " Q formula broken for " + r.species + ";";
        }
      }
      const Timed s = timed_suite("charges", cfg);
      problems += evaluate(s.rep, {{"charges.table.golden", 0.0},
                                   {"charges.table.hypercharge_sum", 0.0},
                                   {"charges.table.charge_formula", 0.0},
                                   {"charges.table.round_trip", 0.0}});
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      line(1, "charge table reproduction (16 rows, exact)", problems, secs, 1.0);
    }

    const Timed alg = timed_suite("algebra", cfg);
    // 2. Clifford / Jordan
    line(2, "Clifford and Jordan identities (exact)",
         evaluate(alg.rep, {{"algebra.clifford.anticommutator", 0.0},
                            {"algebra.clifford.gamma5_projectors", 0.0},
                            {"algebra.jordan.identity", 1e-12},
                            {"algebra.jordan.pauli_products", 0.0},
                            {"algebra.jordan.clifford_closure", 0.0}}),
         alg.seconds, 1.0);
    // 3. hypercomplex
    std::string hc = evaluate(alg.rep, {{"algebra.hypercomplex.square_minus_identity", 1e-12},
                                        {"algebra.hypercomplex.composition_rule", 0.0},
                                        {"algebra.hypercomplex.left_right_commute", 0.0},
                                        {"algebra.hypercomplex.left_right_commute_random", 0.0}});
    if (cfg.samples.hypercomplex_units < 100) hc += " fewer than 100 units;";
    line(3, "hypercomplex structures", hc, alg.seconds, 60.0);

    const Timed vai = timed_suite("vaisman", cfg);
    // 4. Vaisman
    std::vector<Need> v4;
    for (const std::string f : {"lck", "lchk"}) {
      const std::string p = "vaisman." + f + ".";
      v4.push_back({p + "lee_closed", 1e-6});
      v4.push_back({p + "lee_parallel", 1e-4});
      v4.push_back({p + "lee_identity", 1e-4});
      v4.push_back({p + "homothety_invariance", 1e-10});
      v4.push_back({p + "weyl_preserves_structures", 1e-4});
      v4.push_back({p + "distribution_ranks", 0.0});
      v4.push_back({p + "distribution_idempotent", 1e-10});
      v4.push_back({p + "distribution_orthogonal", 1e-10});
      v4.push_back({p + "distribution_complement", 1e-10});
      v4.push_back({p + "distribution_structure_invariant", 1e-10});
    }
    std::string p4 = evaluate(vai.rep, v4);
    if (cfg.samples.vaisman_points < 100) p4 += " fewer than 100 points;";
    line(4, "Vaisman structures on C^4 and H^2 minus the origin", p4, vai.seconds, 60.0);
    // 5. holonomy
    std::string p5 = evaluate(vai.rep, {{"vaisman.holonomy.lck_blocks", 1e-4},
                                        {"vaisman.holonomy.lchk_blocks", 1e-4},
                                        {"vaisman.holonomy.lchk_trivial_on_S", 1e-4}});
    if (cfg.samples.holonomy_loops < 20) p5 += " fewer than 20 loops;";
    line(5, "holonomy block structure", p5, vai.seconds, 60.0);

    const Timed lor = timed_suite("lorentz", cfg);
    // 6. parallel spinors
    std::vector<Need> v6;
    for (const std::string prof : {"zero", "constant", "gaussian"})
      for (const std::string ch : {"L", "R"}) {
        const std::string p = "lorentz." + prof + "." + ch + ".";
        v6.push_back({p + "parallel_spinor", 1e-8});
        v6.push_back({p + "unique_up_to_scale", 1e-8});
        v6.push_back({p + "current_null", 1e-10});
        v6.push_back({p + "current_parallel", 1e-6});
        v6.push_back({p + "chiral", 1e-10});
      }
    line(6, "parallel spinors, uniqueness and Dirac current", evaluate(lor.rep, v6), lor.seconds, 60.0);
    // 7. tension / Dirac
    line(7, "tension and Dirac machinery",
         evaluate(lor.rep, {{"lorentz.tension.flat_constant", 1e-8},
                            {"lorentz.dirac.flat_residual", 1e-8},
                            {"lorentz.dirac.lc_cancellation", 1e-6},
                            {"lorentz.tension.flat_linear_section", 1e-4},
                            {"lorentz.tension.holomorphic_map", 1e-4},
                            {"lorentz.reference_config.tension", std::nullopt, true}}),
         lor.seconds, 60.0);

    // 8. quantize
    const Timed qua = timed_suite("quantize", cfg);
    std::string p8 = evaluate(qua.rep, {{"quantize.ccr_car.full_basis", 0.0},
                                        {"quantize.ccr", 0.0},
                                        {"quantize.car", 0.0},
                                        {"quantize.composite_anticommute", 0.0},
                                        {"quantize.stress.trace", 1e-8},
                                        {"quantize.coupling.plane_wave_oracle", 1e-4}});
    if (cfg.germ_max_degree < 4) p8 += " germ degree below 4;";
    line(8, "operator algebra, stress-energy and coupling field", p8, qua.seconds, 60.0);

    // 9. determinism through the command line
    {
      std::string problems;
      double worst = 0.0;
      std::vector<std::string> dumps;
      for (const std::string run : {"run1", "run2"}) {
        const auto t0 = std::chrono::steady_clock::now();
        const int rc = shell(exe + " --out " + (dir / run).string() + " verify all --quiet >/dev/null");
        worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        if (rc != 0) problems += " verify all exited " + std::to_string(rc) + ";";
        dumps.push_back(canonical_dump(Report::from_json(nlohmann::ordered_json::parse(slurp(dir / run / "report_all.json")))));
      }
      if (dumps[0] != dumps[1]) problems += " reports differ;";
      line(9, "deterministic reports for verify all", problems, worst, 300.0);
    }
  } catch (const std::exception& e) {
    std::cout << "FAIL  acceptance driver error: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
