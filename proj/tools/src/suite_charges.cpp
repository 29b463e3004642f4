#include <fstream>
#include <map>
#include <sstream>

#include "hopfmod/charges.hpp"
#include "hopfmod/cli/table_io.hpp"
#include "suite_support.hpp"

namespace hopf::cli {

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot read golden table " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

}  // namespace

void run_charges(Recorder& r) {
  const RunConfig& cfg = r.cfg();
  const auto rows = generate_table();
  const auto recs = to_records(rows);

  {
    const auto golden_path = cfg.golden_table.empty() ? default_golden_table() : cfg.golden_table;
    const auto golden = parse_csv_table(read_file(golden_path));
    long bad = golden.size() == recs.size() ? 0 : 1 + static_cast<long>(golden.size());
    for (std::size_t i = 0; i < std::min(golden.size(), recs.size()); ++i) bad += !(golden[i] == recs[i]);
    r.exact("charges.table.golden", "charge_table.rows", bad, std::to_string(recs.size()) + " rows");
    // the emitted csv parses back to the same rationals
    const auto back = parse_csv_table(emit_table(rows, TableFormat::csv));
    const auto jback = parse_json_table(emit_table(rows, TableFormat::json));
    r.exact("charges.table.round_trip", "charge_table.rows", (back != recs) + (jback != recs));
  }
  {
    long sum = 0, q = 0;
    for (const auto& x : recs) {
      sum += x.two_Y != x.Y_C + x.Y_S;
      q += x.Q != (x.four_T3 + x.two_Y) / 4;
    }
    r.exact("charges.table.hypercharge_sum", "charge_table.hypercharge", sum);
    r.exact("charges.table.charge_formula", "charge_table.electric_charge", q);
  }
  {
    const auto bf = [](Factor f) { return BundleFactor{f, 1}; };
    long bad = 0;
    bad += hypercolor(bf(Factor::T)) != mpq_class(2, 3);
    bad += hypercolor(bf(Factor::V)) != -2;
    bad += hypercolor(bf(Factor::Tbar)) != mpq_class(-2, 3);
    bad += hypercolor(bf(Factor::Vbar)) != 2;
    bad += hyperspin(bf(Factor::D)) != 0;
    bad += hyperspin(bf(Factor::Vw)) != -2;
    bad += hyperspin(bf(Factor::L)) != 2;
    bad += hyperspin(bf(Factor::Dbar)) != 0;
    bad += hyperspin(bf(Factor::Vwbar)) != 2;
    bad += hyperspin(bf(Factor::Lbar)) != -2;
    r.exact("charges.degrees", "charge_table.bundle_degrees", bad);

    long errs = 0;
    try {
      (void)hypercolor(bf(Factor::D));
      ++errs;
    } catch (const std::invalid_argument&) {
    }
    try {
      (void)hyperspin(bf(Factor::T));
      ++errs;
    } catch (const std::invalid_argument&) {
    }
    try {
      (void)charge_row({"x", "x", Chirality::L, bf(Factor::T), bf(Factor::L), Member::up});
      ++errs;
    } catch (const std::invalid_argument&) {
    }
    r.exact("charges.rejects_invalid", "charge_table.pairing", errs);
  }
  {
    // (species, chirality) -> row; antiparticles mirror particles of the opposite chirality
    std::map<std::pair<std::string, std::string>, TableRecord> by;
    for (const auto& x : recs) by[{x.species, x.chirality}] = x;
    long mirror = 0, doublet = 0, frac = 0;
    for (const auto& x : recs) {
      if (x.species.find("bar") != std::string::npos) continue;
      const auto it = by.find({x.species + "bar", x.chirality == "L" ? "R" : "L"});
      if (it == by.end()) {
        ++mirror;
        continue;
      }
      const auto& y = it->second;
      mirror += (y.Y_C != -x.Y_C) + (y.Y_S != -x.Y_S) + (y.two_Y != -x.two_Y) + (y.Q != -x.Q);
    }
    for (std::size_t i = 0; i + 1 < recs.size(); i += 2) {
      const auto& a = recs[i];
      const auto& b = recs[i + 1];
      if (a.four_T3 == 0) continue;  // singlet pairs
      doublet += abs(a.Q - b.Q) != 1;
    }
    for (const auto& x : recs) {
      const bool fractional = x.Q.get_den() != 1;
      const bool quark = x.species[0] == 'd' || x.species[0] == 'u';
      frac += fractional != quark;
    }
    r.exact("charges.antiparticle_mirror", "charge_table.conjugation", mirror);
    r.exact("charges.doublet_sum_rule", "charge_table.doublets", doublet);
    r.exact("charges.fractional_only_quarks", "charge_table.quarks", frac);
  }
  {
    Rng rng = suite_rng(cfg, 0xD4);
    const Quaternion one = Quaternion::real(1);
    const QuatPair unit{one, one};
    const auto twice = higgs_switch(higgs_switch(unit, one, SwitchMode::both), one, SwitchMode::both);
    r.below("charges.switch.involution", "higgs.switch", std::max(qdist(twice.d, one), qdist(twice.s, one)),
            r.fixed(1e-15));
    double mag = 0.0, round = 0.0, comm = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Quaternion d(rng.uniform_vec(4, -1, 1)), s(rng.uniform_vec(4, -1, 1)), th(rng.uniform_vec(4, -1, 1));
      const Quaternion qd(rng.uniform_vec(4, 0.5, 1.5)), qs(rng.uniform_vec(4, 0.5, 1.5));
      const Quaternion ud = (1.0 / d.norm()) * d, us = (1.0 / s.norm()) * s;
      const auto out = higgs_switch({ud, us}, one, SwitchMode::both);
      mag = std::max({mag, std::abs(out.d.norm() - us.norm()), std::abs(out.s.norm() - ud.norm())});
      // D -> S then S -> D scales by theta r theta r^{-1}; its magnitude is |theta|^2
      const auto a = higgs_switch({d, s}, th, SwitchMode::DtoS, qd, qs);
      const auto b = higgs_switch({Quaternion(), a.s}, th, SwitchMode::StoD, qd, qs);
      round = std::max(round, std::abs(b.d.norm() - th.norm2() * d.norm()) / d.norm());
      // with theta commuting with r the factor is exactly theta^2
      const Quaternion r_ = qd * qs.inverse();
      const Quaternion thc = 0.7 * one + 0.4 * r_;
      const auto a2 = higgs_switch({d, s}, thc, SwitchMode::DtoS, qd, qs);
      const auto b2 = higgs_switch({Quaternion(), a2.s}, thc, SwitchMode::StoD, qd, qs);
      comm = std::max(comm, qdist(b2.d, thc * thc * d) / d.norm());
    }
    r.below("charges.switch.magnitude", "higgs.switch", mag, r.fixed(1e-14));
    r.below("charges.switch.round_trip_norm", "higgs.switch", round, r.fixed(1e-13));
    r.below("charges.switch.round_trip_commuting", "higgs.switch", comm, r.fixed(1e-13));
    long errs = 0;
    try {
      (void)higgs_switch({one, Quaternion()}, one, SwitchMode::StoD);
      ++errs;
    } catch (const std::domain_error&) {
    }
    r.exact("charges.switch.zero_source", "higgs.switch", errs);
  }
}

}  // namespace hopf::cli
