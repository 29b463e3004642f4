#include <gtest/gtest.h>

#include <cmath>

#include "hopfmod/lorentz.hpp"

using namespace hopf;
using Eigen::Matrix4d;

namespace {

const Chart& region() {
  static const Chart c = Chart::box(Vec::Constant(4, -1.0), Vec::Constant(4, 1.0), {"u", "v", "x", "y"});
  return c;
}

std::vector<Vec> inner_points(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) out.push_back(rng.uniform_vec(4, -0.8, 0.8));
  return out;
}

MetricField euclidean4() {
  return {4, 4, 0, [](const Vec&) { return Mat(Mat::Identity(4, 4)); }};
}

double gamma5_defect(const DiracSpinor& s, double sign) { return (gamma5().m * s.c - sign * s.c).norm() / s.c.norm(); }

// hand-written omega along d_u for the null-adapted frame
Matrix4d omega_u(double a, const Vec& x) {
  Matrix4d w = Matrix4d::Zero();
  const double s = a / std::sqrt(2.0);
  w(0, 1) = w(1, 3) = s * x[2];
  w(0, 2) = w(2, 3) = s * x[3];
  return w - Matrix4d(w.transpose());
}

struct Solved {
  ParallelSpinorSolution sol;
  PPWaveMetric m;
};

const Solved& constant_L() {
  static const Solved s{solve_parallel_spinor({Profile::constant(0.3)}, region(), Chirality::L, DiracSpinor(0, 0, 1, 0)),
                        {Profile::constant(0.3)}};
  return s;
}

}  // namespace

TEST(PPWave, MetricComponents) {
  const PPWaveMetric m{Profile::constant(0.3)};
  const Vec x = (Vec(4) << 0.1, 0.2, 0.5, -0.4).finished();
  Matrix4d want = Matrix4d::Zero();
  want(0, 0) = -0.3 * (0.25 + 0.16);
  want(0, 1) = want(1, 0) = 1.0;
  want(2, 2) = want(3, 3) = -1.0;
  EXPECT_LT((m.at(x) - want).norm(), 1e-15);
  EXPECT_EQ(m.metric().positive, 1);
  EXPECT_EQ(m.metric().negative, 3);
}

TEST(PPWave, Profiles) {
  EXPECT_EQ(Profile::zero()(0.7), 0.0);
  EXPECT_EQ(Profile::constant(0.3)(5.0), 0.3);
  const Profile g = Profile::gaussian(0.5, 0.1, 0.5);
  EXPECT_NEAR(g(0.1), 0.5, 1e-15);
  EXPECT_NEAR(g(0.6), 0.5 * std::exp(-0.5), 1e-12);  // width is the standard deviation
  EXPECT_EQ(Profile::from_name("gaussian", 0.5, 0.1, 0.5).name(), "gaussian");
  EXPECT_THROW(Profile::from_name("sine", 1, 0, 1), std::invalid_argument);
}

TEST(Tetrad, OrthonormalNullAdapted) {
  for (const Profile& a : {Profile::zero(), Profile::constant(0.3), Profile::gaussian(0.5, 0.0, 0.5)}) {
    const Tetrad t = null_adapted_tetrad({a});
    for (const Vec& x : inner_points(20, 1)) {
      EXPECT_LT(orthonormality_defect(t, x), 1e-12);
      // e0 - e3 is proportional to the parallel null field d_v
      const Matrix4d F = t.frame(x);
      const Eigen::Vector4d l = F.col(0) - F.col(3);
      EXPECT_LT(std::abs(l[0]) + std::abs(l[2]) + std::abs(l[3]), 1e-12);
    }
  }
  const Tetrad flat = null_adapted_tetrad({Profile::zero()});
  const Matrix4d F = flat.frame(Vec::Zero(4));
  EXPECT_LT((F.col(0) - Eigen::Vector4d(1, 1, 0, 0) / std::sqrt(2.0)).norm(), 1e-15);
}

TEST(Tetrad, GramSchmidtRejectsNullSeed) {
  Matrix4d seeds = Matrix4d::Identity();
  seeds.col(0) = Eigen::Vector4d(0, 1, 0, 0);  // d_v is null
  EXPECT_THROW(lorentz_gram_schmidt(PPWaveMetric{}.at(Vec::Zero(4)), seeds), std::domain_error);
}

TEST(SpinConnection, MinkowskiVanishes) {
  const PPWaveMetric m{Profile::zero()};
  const Tetrad t = null_adapted_tetrad(m);
  const SpinConnection w = spin_connection(m, t, Point(region(), inner_points(1, 2).front()));
  for (const auto& c : w.w) EXPECT_LT(c.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SpinConnection, PlaneWaveOracle) {
  const PPWaveMetric m{Profile::constant(0.3)};
  const Tetrad t = null_adapted_tetrad(m);
  for (const Vec& x : inner_points(10, 3)) {
    const SpinConnection w = spin_connection(m, t, Point(region(), x));
    EXPECT_LT((w.w[0] - omega_u(0.3, x)).cwiseAbs().maxCoeff(), 1e-8);
    for (int mu = 1; mu < 4; ++mu) EXPECT_LT(w.w[static_cast<std::size_t>(mu)].cwiseAbs().maxCoeff(), 1e-8);
    for (const auto& c : w.w) EXPECT_LT((c + c.transpose()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SpinorGenerator, CommutesWithGamma5) {
  const Matrix4d w = omega_u(0.7, (Vec(4) << 0, 0, 0.4, -0.2).finished());
  const Eigen::Matrix4cd G = spinor_generator(w);
  EXPECT_LT((G * gamma5().m - gamma5().m * G).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ParallelSpinor, MinkowskiConstant) {
  const auto sol = solve_parallel_spinor({Profile::zero()}, region(), Chirality::L, DiracSpinor(0, 0, 1, 0));
  EXPECT_LT(sol.residual, 1e-12);
  EXPECT_EQ(sol.kernel_dimension, 2);
  for (const Vec& x : inner_points(10, 4)) EXPECT_LT((sol.field.eval(x).c - sol.seed.c).norm(), 1e-12);
}

TEST(ParallelSpinor, PlaneWaveResidualAndChirality) {
  const auto& s = constant_L();
  EXPECT_EQ(s.sol.grid_points, 10000);
  EXPECT_LT(s.sol.residual, 1e-8);
  EXPECT_EQ(s.sol.kernel_dimension, 1);
  const Tetrad t = null_adapted_tetrad(s.m);
  for (const Vec& x : inner_points(10, 5)) {
    EXPECT_LT(gamma5_defect(s.sol.field.eval(x), +1.0), 1e-10);
    // independent residual evaluation off the grid
    EXPECT_LT(spinor_residual_at(t, s.sol.field, x), 1e-6);
  }
}

TEST(ParallelSpinor, GaussianRightHanded) {
  const PPWaveMetric m{Profile::gaussian(0.5, 0.0, 0.5)};
  const auto sol = solve_parallel_spinor(m, region(), Chirality::R, DiracSpinor(1, 0.5, 0, 0));
  EXPECT_LT(sol.residual, 1e-8);
  for (const Vec& x : inner_points(5, 6)) EXPECT_LT(gamma5_defect(sol.field.eval(x), -1.0), 1e-10);
}

TEST(ParallelSpinor, UniqueUpToScale) {
  const auto& a = constant_L();
  const auto b = solve_parallel_spinor(a.m, region(), Chirality::L, DiracSpinor(0, 0, cplx(0.3, 1.0), -0.7));
  const auto pts = inner_points(30, 7);
  const Eigen::Vector4cd a0 = a.sol.field.eval(pts.front()).c, b0 = b.field.eval(pts.front()).c;
  const cplx k = a0.dot(b0) / a0.squaredNorm();
  for (const Vec& x : pts) {
    const Eigen::Vector4cd bv = b.field.eval(x).c;
    EXPECT_LT((bv - k * a.sol.field.eval(x).c).norm() / bv.norm(), 1e-8);
  }
}

TEST(ParallelSpinor, Errors) {
  EXPECT_THROW(solve_parallel_spinor({Profile::constant(0.3)}, region(), Chirality::R, DiracSpinor(0, 0, 1, 0)),
               std::invalid_argument);
  ParallelSpinorOptions strict;
  strict.nodes_per_axis = 4;
  strict.accept = 1e-30;
  EXPECT_THROW(solve_parallel_spinor({Profile::constant(0.3)}, region(), Chirality::L, DiracSpinor(0, 0, 1, 0), strict),
               std::runtime_error);
  EXPECT_THROW(solve_parallel_spinor({}, Chart::punctured(4), Chirality::L, DiracSpinor(0, 0, 1, 0)),
               std::invalid_argument);
}

TEST(DiracCurrent, MinkowskiDirection) {
  // N^a = psi^dagger gamma^0 gamma^a psi by hand for psi = (0,0,1,0)
  const DiracSpinor psi(0, 0, 1, 0);
  Eigen::Vector4d want;
  for (int a = 0; a < 4; ++a) want[a] = (psi.c.adjoint() * gamma(0).m * gamma(a).m * psi.c)(0, 0).real();
  const Eigen::Vector4d N = dirac_current_frame(psi);
  EXPECT_LT((N - want).norm(), 1e-15);
  EXPECT_GT(N[0], 0.0);
  EXPECT_NEAR(N[3], N[0], 1e-15);
  EXPECT_NEAR(N[1], 0.0, 1e-15);
  EXPECT_NEAR(N[2], 0.0, 1e-15);
  EXPECT_THROW(dirac_current_frame(DiracSpinor{}), std::domain_error);
}

TEST(DiracCurrent, NullAndParallel) {
  const auto& s = constant_L();
  const Tetrad t = null_adapted_tetrad(s.m);
  const TensorField N{4, 1, 0, [&](const Vec& x) { return dirac_current(s.sol.field, t, Point(region(), x)); }};
  const Connection lc = levi_civita(s.m.metric(), {1e-4, true});
  for (const Vec& x : inner_points(8, 8)) {
    const Point p(region(), x);
    const Vec n = N.eval(x);
    EXPECT_LT(std::abs(n.dot(s.m.at(x) * n)) / n.squaredNorm(), 1e-10);
    for (int mu = 0; mu < 4; ++mu) EXPECT_LT(covariant_derivative(lc, N, Vec::Unit(4, mu), p, 1e-4).norm(), 1e-6);
  }
}

TEST(Section, Trivialization) {
  const SpinorField one{SpinorField::Tag::L, [](const Vec&) { return DiracSpinor(0, 0, 1, 0); }};
  const SwannSection sec = build_section(one);
  for (const Vec& x : inner_points(5, 9)) {
    const Vec y = sec.eval(x);
    EXPECT_LT((y.head<4>() - x).norm(), 1e-15);
    EXPECT_LT((y.tail<4>() - Vec::Unit(4, 0)).norm(), 1e-15);
  }
  const SwannSection scaled = build_section(one, ClassAction{2.0, Quaternion::real(1)});
  const Vec x = inner_points(1, 10).front();
  EXPECT_LT((scaled.eval(x) - 2.0 * sec.eval(x)).norm(), 1e-15);
  const Quaternion g = Quaternion(Eigen::Vector4d(0.5, 0.5, -0.5, 0.5));
  const SwannSection rot = compose(sec, ClassAction{1.0, g});
  EXPECT_NEAR(rot.eval(x).tail<4>().norm(), sec.eval(x).tail<4>().norm(), 1e-15);
  const SpinorField mixed{SpinorField::Tag::mixed, one.eval};
  EXPECT_THROW(build_section(mixed), std::invalid_argument);
}

TEST(Tension, ConstantSectionFlat) {
  const SwannSection c{[](const Vec&) { return Vec(Vec::Constant(8, 0.4)); }, {}};
  const PPWaveMetric mink{};
  const auto t = tension_field(c, flat_connection(8), mink.metric(), flat_connection(4), Point(region(), Vec::Zero(4)));
  EXPECT_LT(t.norm, 1e-8);
}

TEST(Tension, ComplexLinearAndHolomorphicMaps) {
  const Chart box = Chart::box(Vec::Constant(4, -2.0), Vec::Constant(4, 2.0));
  const auto as_vec = [](const std::array<cplx, 4>& w) {
    Vec out(8);
    for (int k = 0; k < 4; ++k) out[2 * k] = w[static_cast<std::size_t>(k)].real(), out[2 * k + 1] = w[static_cast<std::size_t>(k)].imag();
    return out;
  };
  const SwannSection linear{[&](const Vec& x) {
                              const cplx z1(x[0], x[1]), z2(x[2], x[3]);
                              return as_vec({z1 + z2, cplx(0, 2) * z1, z2 - 0.5 * z1, cplx(1, 1) * z2});
                            },
                            {}};
  const SwannSection quad{[&](const Vec& x) {
                            const cplx z1(x[0], x[1]), z2(x[2], x[3]);
                            return as_vec({z1 * z2, z1 * z1, z2 * z2 * z2, z1 + z2});
                          },
                          {}};
  // a non-holomorphic control: |z1|^2 in one slot has nonzero Laplacian
  const SwannSection bad{[&](const Vec& x) {
                           const cplx z1(x[0], x[1]);
                           return as_vec({std::norm(z1), 0.0, 0.0, 0.0});
                         },
                         {}};
  for (const Vec& x : inner_points(5, 11)) {
    const Point p(box, x);
    EXPECT_LT(tension_field(linear, flat_connection(8), euclidean4(), flat_connection(4), p).norm, 1e-6);
    EXPECT_LT(tension_field(quad, flat_connection(8), euclidean4(), flat_connection(4), p).norm, 1e-4);
    EXPECT_NEAR(tension_field(bad, flat_connection(8), euclidean4(), flat_connection(4), p).norm, 4.0, 1e-4);
  }
}

TEST(Tension, ClassEquivariance) {
  const auto vs = VaismanStructure::lck();
  const PPWaveMetric mink{};
  const SwannSection bent{[](const Vec& x) {
                            Vec y(8);
                            y << 1.0 + 0.2 * x[0] * x[1], 0.3 * x[2], 0.5 + 0.1 * x[3] * x[3], 0.2 * x[0], 1.2,
                                0.1 * x[1] * x[2], -0.4 + 0.2 * x[0], 0.3;
                            return y;
                          },
                          {}};
  const ClassAction g{2.0, Quaternion(Eigen::Vector4d(0.6, 0.0, 0.8, 0.0))};
  for (const Vec& x : inner_points(4, 12)) {
    const Point p(region(), x);
    const Vec t0 = tension_field(bent, vs, mink, p).tau;
    const Vec t1 = tension_field(compose(bent, g), vs, mink, p).tau;
    EXPECT_LT((t1 - g.apply(t0)).norm() / t1.norm(), 1e-6);
  }
}

TEST(Dirac, FlatConfiguration) {
  const SpinorField one{SpinorField::Tag::L, [](const Vec&) { return DiracSpinor(0, 0, 1, 0); }};
  const SwannSection c{[](const Vec&) { return Vec(Vec::Constant(8, 0.5)); }, {}};
  const auto rep = dirac_residual(c, one, VaismanStructure::flat(), PPWaveMetric{}, Point(region(), Vec::Zero(4)));
  EXPECT_LT(rep.norm, 1e-8);
  EXPECT_EQ(rep.residual.rows(), 8);
  EXPECT_EQ(rep.residual.cols(), 4);
}

TEST(Dirac, LeviCivitaTermsCancel) {
  const PPWaveMetric m{Profile::constant(0.3)};
  const Tetrad t = null_adapted_tetrad(m);
  const FrameField twisted = [t](const Vec& x) {
    const double phi = 0.25 * x[2] - 0.3 * x[0], th = 0.5 * x[3];
    Matrix4d B = Matrix4d::Identity(), R = Matrix4d::Identity();
    B(0, 0) = B(2, 2) = std::cosh(phi);
    B(0, 2) = B(2, 0) = std::sinh(phi);
    R(1, 1) = R(3, 3) = std::cos(th);
    R(1, 3) = -std::sin(th);
    R(3, 1) = std::sin(th);
    return Matrix4d(t.frame(x) * B * R);
  };
  const SwannSection curved{[](const Vec& x) {
                              Vec y(8);
                              y << std::sin(x[0]) + 1.0, x[1] * x[2], 0.3 * x[3], 1.0 + x[0] * x[0], 0.5, std::cos(x[1]),
                                  x[2] * x[3], 0.2 * x[0];
                              return y;
                            },
                            {}};
  for (const Vec& x : inner_points(5, 13)) {
    const auto c = lc_cancellation(curved, twisted, m.metric(), Point(region(), x));
    EXPECT_GT(c.v_norm, 1e-2);
    EXPECT_GT(c.dirac_route, 1e-3);
    EXPECT_LT(c.difference, 1e-6);
  }
}

TEST(Holomorphy, FlatConfiguration) {
  const auto vs = VaismanStructure::lck();
  const SpinorField one{SpinorField::Tag::L, [](const Vec&) { return DiracSpinor(0, 0, 1, 0); }};
  const SwannSection sec = build_section(one);
  for (const Vec& x : inner_points(5, 14)) EXPECT_LT(holomorphy_residual(sec, vs, Point(region(), x)), 1e-6);
}
