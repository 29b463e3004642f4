#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopfmod/lorentz.hpp"

namespace hopf {

inline constexpr int kZGenerators = 4;
inline constexpr int kQGenerators = 6;  // q^j_n, index (j-1)*3 + (n-1)

// z exponents times an ordered product of distinct q generators (ascending index).
struct Monomial {
  std::array<std::uint8_t, kZGenerators> z{};
  std::uint8_t q = 0;  // bit mask

  int z_degree() const;
  int q_degree() const;
  auto operator<=>(const Monomial&) const = default;
};

class Germ {
 public:
  Germ() = default;
  static Germ vacuum();
  static Germ from(const Monomial& m, cplx c = 1.0);

  void add(const Monomial& m, cplx c);
  const std::map<Monomial, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Germ& o) const { return terms_ == o.terms_; }

  Germ operator+(const Germ& o) const;
  Germ operator-(const Germ& o) const;
  Germ operator*(cplx s) const;

 private:
  std::map<Monomial, cplx> terms_;  // zero coefficients are never stored
};

enum class OpKind { create, annihilate };
enum class Sector { z, q };

struct FieldOperator {
  OpKind kind = OpKind::create;
  Sector sector = Sector::z;
  int index = 0;

  static FieldOperator z_op(OpKind k, int i) { return {k, Sector::z, i}; }
  static FieldOperator q_op(OpKind k, int j, int n) { return {k, Sector::q, (j - 1) * 3 + (n - 1)}; }
};

// create: left multiplication; annihilate: left (graded) derivation.
Germ apply_operator(const FieldOperator& op, const Germ& g);

// z-degree <= d and q-degree <= min(d, 6).
std::vector<Monomial> monomial_basis(int max_degree);

struct CcrCarReport {
  int max_degree = 0;
  long basis_size = 0;
  long relations_checked = 0;
  long failures = 0;
  bool ccr = true;        // [Z^i, z^j] = delta, [z,z] = [Z,Z] = 0
  bool car = true;        // {Q, q} = delta, {q,q} = {Q,Q} = 0
  bool mixed = true;      // z-sector commutes with q-sector
  bool composite = true;  // z (x) q creators anticommute pairwise
  std::vector<std::string> failed;

  bool pass() const { return failures == 0; }
};

// Throws std::invalid_argument for max_degree < 2.
CcrCarReport check_ccr_car(int max_degree);

// Gamma^0_{nu ka} = e^0_mu Gamma^mu_{nu ka}, the timelike coframe slice.
Eigen::Matrix4d gamma0_slice(const PPWaveMetric& m, const Point& p);
// a_X = X^nu Gamma^0_{nu ka} X^ka
double coupling_field(const PPWaveMetric& m, const Vec& X, const Point& p);

// Internal index (rows) times Weyl spinor (columns).
struct VectorSpinor {
  Eigen::MatrixXcd c;
  Chirality chirality = Chirality::L;
};

// a_X <psi, (-i Y) (x) sigma^mu psi> for mu = 0..3; throws std::invalid_argument unless Y is anti-Hermitian.
Eigen::Vector4cd current(const VectorSpinor& psi, const Eigen::MatrixXcd& generator, double a_X);

std::vector<Eigen::MatrixXcd> su3_generators();  // (i/2) Gell-Mann
std::vector<Eigen::MatrixXcd> sp1_generators();  // (i/2) Pauli
Eigen::MatrixXcd u1_generator(int dim);          // i Id

struct CurvatureForms {
  int dim = 0;
  std::vector<Eigen::MatrixXcd> F;       // F[m*dim + n], antisymmetric in (m, n)
  std::vector<Eigen::MatrixXcd> Fprime;  // symmetric companion
};

CurvatureForms homogeneous_curvature(const std::vector<Eigen::MatrixXcd>& generators);

struct StressEnergy {
  Mat S;
  double e = 0.0;
  std::optional<double> G;  // 1/e when e > 0
};

StressEnergy stress_energy(const SwannSection& sec, const MetricField& target, const MetricField& base,
                           const Point& p, double step = 1e-5);
StressEnergy stress_energy(const SwannSection& sec, const VaismanStructure& vs, const PPWaveMetric& m, const Point& p,
                           double step = 1e-5);

}  // namespace hopf
