#include "hopfmod/charges.hpp"

#include <stdexcept>

namespace hopf {

bool BundleFactor::color_sector() const {
  return name == Factor::T || name == Factor::V || name == Factor::Tbar || name == Factor::Vbar;
}

bool BundleFactor::barred() const {
  switch (name) {
    case Factor::Tbar:
    case Factor::Vbar:
    case Factor::Dbar:
    case Factor::Vwbar:
    case Factor::Lbar: return true;
    default: return false;
  }
}

std::string BundleFactor::label() const {
  switch (name) {
    case Factor::T: return "T";
    case Factor::V: return "V";
    case Factor::Tbar: return "Tbar";
    case Factor::Vbar: return "Vbar";
    case Factor::D: return "D_nI";
    case Factor::Vw: return "V_nI";
    case Factor::L: return "L_nI";
    case Factor::Dbar: return "Dbar_nI";
    case Factor::Vwbar: return "Vbar_nI";
    case Factor::Lbar: return "Lbar_nI";
  }
  return "?";
}

mpq_class hypercolor(const BundleFactor& f) {
  switch (f.name) {
    case Factor::T: return mpq_class(2, 3);
    case Factor::V: return mpq_class(-2);
    case Factor::Tbar: return mpq_class(-2, 3);
    case Factor::Vbar: return mpq_class(2);
    default: throw std::invalid_argument("hypercolor needs a color-sector factor, got " + f.label());
  }
}

mpq_class hyperspin(const BundleFactor& f) {
  switch (f.name) {
    case Factor::D:
    case Factor::Dbar: return mpq_class(0);
    case Factor::Vw: return mpq_class(-2);
    case Factor::L: return mpq_class(2);
    case Factor::Vwbar: return mpq_class(2);
    case Factor::Lbar: return mpq_class(-2);
    default: throw std::invalid_argument("hyperspin needs a weak-sector factor, got " + f.label());
  }
}

std::string FermionSpecies::tensor() const {
  std::string c = color.label();
  std::string w = weak.label();
  return c + w;
}

ChargeRow charge_row(const FermionSpecies& s) {
  if (!s.color.color_sector() || s.weak.color_sector()) throw std::invalid_argument("species factors in wrong sectors");
  if (s.color.barred() != s.weak.barred()) throw std::invalid_argument("mixed barred and unbarred factors");
  const bool doublet = s.weak.name == Factor::D || s.weak.name == Factor::Dbar;
  // particles: L <-> doublet; antiparticles: R <-> doublet
  const bool wants_doublet = (s.chirality == Chirality::L) != s.weak.barred();
  if (doublet != wants_doublet) throw std::invalid_argument("inconsistent species: chirality does not match weak factor");

  ChargeRow r;
  r.species = s;
  r.Y_C = hypercolor(s.color);
  r.Y_S = hyperspin(s.weak);
  r.two_Y = r.Y_C + r.Y_S;
  if (doublet) {
    const int sign = s.member == Member::down ? -1 : 1;
    r.four_T3 = s.weak.barred() ? mpq_class(-2 * sign) : mpq_class(2 * sign);
  } else {
    r.four_T3 = 0;
  }
  r.Q = (r.four_T3 + r.two_Y) / 4;
  return r;
}

std::vector<FermionSpecies> standard_species(int generation) {
  auto bf = [generation](Factor f) { return BundleFactor{f, generation}; };
  using C = Chirality;
  using M = Member;
  return {
      {"d", "(d/u)_L", C::L, bf(Factor::T), bf(Factor::D), M::down},
      {"u", "(d/u)_L", C::L, bf(Factor::T), bf(Factor::D), M::up},
      {"e", "(e/nu)_L", C::L, bf(Factor::V), bf(Factor::D), M::down},
      {"nu", "(e/nu)_L", C::L, bf(Factor::V), bf(Factor::D), M::up},
      {"d", "d_R, u_R", C::R, bf(Factor::T), bf(Factor::Vw), M::down},
      {"u", "d_R, u_R", C::R, bf(Factor::T), bf(Factor::L), M::up},
      {"e", "e_R, nu_R", C::R, bf(Factor::V), bf(Factor::Vw), M::down},
      {"nu", "e_R, nu_R", C::R, bf(Factor::V), bf(Factor::L), M::up},
      {"dbar", "dbar_L, ubar_L", C::L, bf(Factor::Tbar), bf(Factor::Vwbar), M::down},
      {"ubar", "dbar_L, ubar_L", C::L, bf(Factor::Tbar), bf(Factor::Lbar), M::up},
      {"ebar", "ebar_L, nubar_L", C::L, bf(Factor::Vbar), bf(Factor::Vwbar), M::down},
      {"nubar", "ebar_L, nubar_L", C::L, bf(Factor::Vbar), bf(Factor::Lbar), M::up},
      {"dbar", "(dbar/ubar)_R", C::R, bf(Factor::Tbar), bf(Factor::Dbar), M::down},
      {"ubar", "(dbar/ubar)_R", C::R, bf(Factor::Tbar), bf(Factor::Dbar), M::up},
      {"ebar", "(ebar/nubar)_R", C::R, bf(Factor::Vbar), bf(Factor::Dbar), M::down},
      {"nubar", "(ebar/nubar)_R", C::R, bf(Factor::Vbar), bf(Factor::Dbar), M::up},
  };
}

std::vector<ChargeRow> generate_table() {
  std::vector<ChargeRow> rows;
  for (const auto& s : standard_species()) rows.push_back(charge_row(s));
  return rows;
}

std::string format_rational(const mpq_class& q) {
  const std::string s = q.get_str();
  return sgn(q) > 0 ? "+" + s : s;
}

mpq_class parse_rational(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  mpq_class q;
  if (t.empty() || q.set_str(t, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  q.canonicalize();
  return q;
}

QuatPair higgs_switch(const QuatPair& v, const Quaternion& theta_H, SwitchMode mode, const Quaternion& q_d,
                      const Quaternion& q_s) {
  if (q_s.norm2() == 0.0 || q_d.norm2() == 0.0) throw std::domain_error("zero generation scale");
  const Quaternion r = q_d * q_s.inverse();
  const bool to_d = mode != SwitchMode::DtoS;
  const bool to_s = mode != SwitchMode::StoD;
  if (to_d && mode == SwitchMode::StoD && v.s.norm2() == 0.0) throw std::domain_error("zero source magnitude");
  if (to_s && mode == SwitchMode::DtoS && v.d.norm2() == 0.0) throw std::domain_error("zero source magnitude");
  if (mode == SwitchMode::both && v.d.norm2() == 0.0 && v.s.norm2() == 0.0)
    throw std::domain_error("zero source magnitude");
  QuatPair out;
  if (to_d) out.d = theta_H * r * v.s;
  if (to_s) out.s = theta_H * r.inverse() * v.d;
  return out;
}

}  // namespace hopf
