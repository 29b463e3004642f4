#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "hopfmod/algebra.hpp"

namespace hopf {

// Color-sector factors T, V (and conjugates); weak-sector factors D_nI, V_nI, L_nI (and conjugates).
enum class Factor { T, V, Tbar, Vbar, D, Vw, L, Dbar, Vwbar, Lbar };

struct BundleFactor {
  Factor name = Factor::T;
  int generation = 1;  // 1..3, carried but inert

  bool color_sector() const;
  bool barred() const;
  std::string label() const;  // e.g. "T", "Vbar", "D_nI"
};

// Throw std::invalid_argument when given a factor of the wrong sector.
mpq_class hypercolor(const BundleFactor& f);
mpq_class hyperspin(const BundleFactor& f);

enum class Member { down, up };  // d/e-type or u/nu-type

struct FermionSpecies {
  std::string label;  // "d", "ubar", ...
  std::string group;  // "(d/u)_L", "e_R, nu_R", ...
  Chirality chirality = Chirality::L;
  BundleFactor color;
  BundleFactor weak;
  Member member = Member::down;

  std::string tensor() const;  // e.g. "TD_nI"
};

struct ChargeRow {
  FermionSpecies species;
  mpq_class Y_C, Y_S, two_Y, four_T3, Q;
};

// Throws std::invalid_argument for inconsistent species.
ChargeRow charge_row(const FermionSpecies& s);
std::vector<FermionSpecies> standard_species(int generation = 1);
std::vector<ChargeRow> generate_table();

std::string format_rational(const mpq_class& q);  // "+2/3", "-1", "0"
mpq_class parse_rational(const std::string& s);   // throws std::invalid_argument

// Slots are coordinates in the normalised (D0/|D0|, S0/|S0|) basis; Sw = [[0,1],[1,0]].
struct QuatPair {
  Quaternion d, s;
};

enum class SwitchMode { DtoS, StoD, both };

// Switched pair scaled by theta_H r^{+1} (S->D) or theta_H r^{-1} (D->S), r = q_d q_s^{-1}.
// Throws std::domain_error for a zero source slot or q_s = 0.
QuatPair higgs_switch(const QuatPair& v, const Quaternion& theta_H, SwitchMode mode,
                      const Quaternion& q_d = Quaternion::real(1.0), const Quaternion& q_s = Quaternion::real(1.0));

}  // namespace hopf
