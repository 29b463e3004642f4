#pragma once

#include <array>
#include <functional>
#include <string>

#include "hopfmod/algebra.hpp"
#include "hopfmod/manifold.hpp"
#include "hopfmod/vaisman.hpp"

namespace hopf {

// a(u) in g = 2 du dv - a(u)(x^2 + y^2) du^2 - dx^2 - dy^2, coordinates (u, v, x, y).
struct Profile {
  enum class Kind { zero, constant, gaussian };
  Kind kind = Kind::zero;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;

  static Profile zero() { return {}; }
  static Profile constant(double a) { return {Kind::constant, a, 0.0, 1.0}; }
  static Profile gaussian(double a, double center, double width) { return {Kind::gaussian, a, center, width}; }
  // Throws std::invalid_argument for unknown names.
  static Profile from_name(const std::string& name, double amplitude, double center, double width);

  double operator()(double u) const;
  std::string name() const;
};

struct PPWaveMetric {
  Profile a;

  Eigen::Matrix4d at(const Vec& x) const;
  MetricField metric() const;
};

// Columns of frame(x) are e_0..e_3 with g(e_0,e_0) = +1, g(e_j,e_j) = -1.
struct Tetrad {
  PPWaveMetric m;

  Eigen::Matrix4d frame(const Vec& x) const;
  Eigen::Matrix4d coframe(const Vec& x) const { return frame(x).inverse(); }  // rows e^a
};

// Orthonormalises the columns of seeds against g; signs follow the signature.
Eigen::Matrix4d lorentz_gram_schmidt(const Eigen::Matrix4d& g, const Eigen::Matrix4d& seeds);

// Gram-Schmidt seeds (n + l, d_x, d_y, n - l) with l = d_v, n = d_u + H/2 d_v.
Tetrad null_adapted_tetrad(const PPWaveMetric& m);

double orthonormality_defect(const Tetrad& t, const Vec& x);

// w[mu](a, b) = omega_mu^{ab}
struct SpinConnection {
  std::array<Eigen::Matrix4d, 4> w;
};

SpinConnection spin_connection(const PPWaveMetric& m, const Tetrad& t, const Point& p);
// omega(dir)^{ab} without chart checks.
Eigen::Matrix4d spin_connection_along(const Tetrad& t, const Vec& x, const Vec& dir);
// (1/4) omega^{ab} gamma_a gamma_b
Eigen::Matrix4cd spinor_generator(const Eigen::Matrix4d& omega_ab);

struct SpinorField {
  enum class Tag { L, R, mixed };
  Tag tag = Tag::mixed;
  std::function<DiracSpinor(const Vec&)> eval;
};

struct ParallelSpinorOptions {
  int nodes_per_axis = 10;
  int substeps = 2;
  double fd_step = 1e-5;
  double accept = 1e-6;  // residual above this throws "no parallel spinor found"
};

struct ParallelSpinorSolution {
  SpinorField field;
  DiracSpinor seed;            // value at the region corner
  double residual = 0.0;       // max |d_mu psi + Omega_mu psi| over the grid
  long grid_points = 0;
  int kernel_dimension = 0;    // dimension of the curvature kernel in the chirality block
};

ParallelSpinorSolution solve_parallel_spinor(const PPWaveMetric& m, const Chart& region, Chirality chirality,
                                             const DiracSpinor& seed, const ParallelSpinorOptions& opt = {});

// Max over frame directions of |d_a psi + Omega_a psi| at x.
double spinor_residual_at(const Tetrad& t, const SpinorField& psi, const Vec& x, double step = 1e-5);

// N = sum_a <psi, gamma^a psi> e_a (Dirac pairing), coordinate components.
Vec dirac_current(const SpinorField& psi, const Tetrad& t, const Point& p);
Eigen::Vector4d dirac_current_frame(const DiracSpinor& psi);  // components in the frame

// (q1, q2) -> scale (q1 g, q2 g)
struct ClassAction {
  double scale = 1.0;
  Quaternion g = Quaternion::real(1.0);

  Vec apply(const Vec& cover) const;
};

struct SwannSection {
  std::function<Vec(const Vec&)> eval;  // base R^4 -> cover R^8
  ClassAction gamma;
};

// x -> gamma (x s(x), s(x)) with s the chirality block of psi read as z1 + z2 j.
SwannSection build_section(const SpinorField& psi, const ClassAction& gamma = {});
SwannSection compose(const SwannSection& sec, const ClassAction& gamma);

Mat section_jacobian(const SwannSection& sec, const Vec& x, double step = 1e-5);

struct TensionReport {
  Vec tau;
  double norm = 0.0;
};

TensionReport tension_field(const SwannSection& sec, const Connection& target, const MetricField& base,
                            const Connection& base_conn, const Point& p, double step = 1e-4);
TensionReport tension_field(const SwannSection& sec, const VaismanStructure& vs, const PPWaveMetric& m,
                            const Point& p, double step = 1e-4);

// |I dF - dF O| with O left multiplication by i on the base quaternion.
double holomorphy_residual(const SwannSection& sec, const VaismanStructure& vs, const Point& p, double step = 1e-5);

using FrameField = std::function<Eigen::Matrix4d(const Vec&)>;

// The two Levi-Civita terms of the Dirac rewriting: sum_b V^b dF(e_b) against dF(V),
// V = sum_a eta_aa nabla^LC_{e_a} e_a for the given orthonormal frame.
struct LcCancellation {
  double dirac_route = 0.0;
  double tension_route = 0.0;
  double difference = 0.0;
  double v_norm = 0.0;
};
LcCancellation lc_cancellation(const SwannSection& sec, const FrameField& frame, const MetricField& g, const Point& p);

struct DiracResidualReport {
  Eigen::MatrixXcd residual;  // 8 x 4: vector slot x spinor slot
  double norm = 0.0;
  double lc_dirac_route = 0.0;    // |X^0 (x) gamma(V) psi~| rewritten through the Jordan product
  double lc_tension_route = 0.0;  // |dF(V) (x) psi|
  double cancellation = 0.0;      // difference of the two
  double tension_spinor = 0.0;    // |tau| |psi|
};

DiracResidualReport dirac_residual(const SwannSection& sec, const SpinorField& psi, const VaismanStructure& vs,
                                   const PPWaveMetric& m, const Point& p, double step = 1e-4);

}  // namespace hopf
