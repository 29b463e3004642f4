#include <gtest/gtest.h>

#include <cmath>

#include "hopfmod/vaisman.hpp"

using namespace hopf;

namespace {

std::vector<Vec> shell_points(const VaismanStructure& vs, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) out.push_back(vs.chart.sample_shell(rng, 0.5, 4.0));
  return out;
}

VectorField constant_field(const Vec& v) {
  return [v](const Vec&) { return v; };
}

VectorField affine_field(const Mat& A, const Vec& c) {
  return [A, c](const Vec& x) { return Vec(A * x + c); };
}

int numeric_rank(const Mat& P) {
  Eigen::JacobiSVD<Mat> svd(P);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()[i] > 1e-8;
  return r;
}

}  // namespace

TEST(Vaisman, LeeSignResolvesToMinusOne) {
  EXPECT_EQ(VaismanStructure::lck().lee_sign, -1);
  EXPECT_EQ(VaismanStructure::lchk().lee_sign, -1);
}

TEST(Vaisman, MetricExamples) {
  const auto vs = VaismanStructure::lck();
  Vec unit = Vec::Zero(8);
  unit[3] = 1.0;
  EXPECT_LT((vaisman_metric(vs, Point(vs.chart, unit)) - Mat::Identity(8, 8)).norm(), 1e-15);
  EXPECT_THROW(vaisman_metric(vs, Point(vs.chart, Vec::Zero(8))), std::domain_error);
  for (const Vec& x : shell_points(vs, 100, 1)) {
    const Mat b = vaisman_metric(vs, Point(vs.chart, x));
    const Mat pulled = vaisman_metric(vs, Point(vs.chart, Vec(vs.lambda * x))) * vs.lambda * vs.lambda;
    EXPECT_LT((pulled - b).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Mat>(b).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Vaisman, LeeFormOracle) {
  // theta = -d log|x|^2 = -2x/|x|^2, theta# = -2x, |theta|_b = 2
  const auto vs = VaismanStructure::lck();
  for (const Vec& x : shell_points(vs, 100, 2)) {
    const Point p(vs.chart, x);
    EXPECT_LT((lee_form(vs, p) + 2.0 * x / x.squaredNorm()).norm(), 1e-14);
    EXPECT_LT((lee_field(vs, p) + 2.0 * x).norm(), 1e-12);
    const double n = std::sqrt(lee_form(vs, p).dot(lee_field(vs, p)));
    EXPECT_NEAR(n, 2.0, 1e-12);
    EXPECT_LT(lee_closedness(vs, p), 1e-6);
    EXPECT_LT(lee_parallelism(vs, p), 1e-4);
  }
}

TEST(Vaisman, LeeIdentityAndSignDetectable) {
  for (const auto& vs : {VaismanStructure::lck(), VaismanStructure::lchk()}) {
    auto flipped = vs;
    flipped.lee_sign = -vs.lee_sign;
    for (const Vec& x : shell_points(vs, 30, 3)) {
      const Point p(vs.chart, x);
      EXPECT_LT(lee_identity_check(vs, p).residual, 1e-4);
      EXPECT_GT(lee_identity_check(flipped, p).residual, 1e-2);
    }
  }
}

TEST(Vaisman, FlatCaseIsKahler) {
  const auto flat = VaismanStructure::flat();
  for (const Vec& x : shell_points(flat, 10, 4)) {
    const auto rep = lee_identity_check(flat, Point(flat.chart, x));
    EXPECT_LT(rep.d_omega, 1e-8);
    EXPECT_EQ(lee_form(flat, Point(flat.chart, x)).norm(), 0.0);
  }
}

TEST(Vaisman, ComplexStructures) {
  const auto lchk = VaismanStructure::lchk();
  const Mat I = lchk.complex_structure(0), J = lchk.complex_structure(1), K = lchk.complex_structure(2);
  const Mat Id = Mat::Identity(8, 8);
  EXPECT_LT((I * I + Id).norm(), 1e-15);
  EXPECT_LT((I * J - K).norm(), 1e-15);
  EXPECT_LT((I.transpose() * I - Id).norm(), 1e-15);  // orthogonal, so b-Hermitian for conformal b
  EXPECT_THROW(VaismanStructure::lck().complex_structure(1), std::out_of_range);
}

TEST(Weyl, IsTheFlatConnection) {
  // With s = -1 the correction cancels the conformal Levi-Civita symbols exactly.
  for (const auto& vs : {VaismanStructure::lck(), VaismanStructure::lchk()}) {
    const WeylConnection wc{vs, {1e-4, true}};
    for (const Vec& x : shell_points(vs, 20, 5)) EXPECT_LT(wc.christoffel_at(x).max_abs(), 1e-8);
  }
}

TEST(Weyl, DegeneratesToLeviCivita) {
  auto vs = VaismanStructure::lck();
  vs.lee_enabled = false;
  const WeylConnection wc{vs, {}};
  const Connection lc = levi_civita(vs.metric());
  for (const Vec& x : shell_points(vs, 10, 6)) {
    const Christoffel a = wc.christoffel_at(x), b = lc(x);
    for (std::size_t i = 0; i < a.d.size(); ++i) ASSERT_EQ(a.d[i], b.d[i]);
  }
}

TEST(Weyl, PreservesStructuresAndConformalMetricity) {
  Rng rng(7);
  for (const auto& vs : {VaismanStructure::lck(), VaismanStructure::lchk()}) {
    const WeylConnection wc{vs, {}};
    const double c = weyl_metric_ratio(wc, Point(vs.chart, shell_points(vs, 1, 8).front()));
    EXPECT_NEAR(c, 1.0, 1e-6);
    for (const Vec& x : shell_points(vs, 20, 9)) {
      const Point p(vs.chart, x);
      const auto X = affine_field(Mat(rng.uniform_vec(64, -1, 1).reshaped(8, 8)), rng.uniform_vec(8, -1, 1));
      const auto Y = affine_field(Mat(rng.uniform_vec(64, -1, 1).reshaped(8, 8)), rng.uniform_vec(8, -1, 1));
      for (int a = 0; a < vs.structure_count(); ++a)
        EXPECT_LT(weyl_structure_defect(wc, vs.complex_structure(a), X, Y, p), 1e-4);
      EXPECT_LT(weyl_metricity_residual(wc, 1.0, p), 1e-4);
      EXPECT_GT(weyl_metricity_residual(wc, -1.0, p), 1e-2);
    }
  }
}

TEST(Weyl, DerivativeOfConstantFieldIsCorrection) {
  // flat Weyl connection: nabla^w_X Y = dY(X) = 0 for constant Y
  const auto vs = VaismanStructure::lck();
  const Point p(vs.chart, shell_points(vs, 1, 10).front());
  const Vec d = weyl_derivative(WeylConnection{vs, {}}, constant_field(Vec::Unit(8, 2)), constant_field(Vec::Unit(8, 5)), p);
  EXPECT_LT(d.norm(), 1e-8);
}

TEST(Distributions, RanksAndOrthogonality) {
  const auto lck = VaismanStructure::lck();
  const auto lchk = VaismanStructure::lchk();
  for (const Vec& x : shell_points(lck, 30, 11)) {
    const Point p(lck.chart, x);
    const Mat b = vaisman_metric(lck, p);
    const Mat T = distribution_projector(lck, DistributionName::T, p);
    const Mat V = distribution_projector(lck, DistributionName::V, p);
    EXPECT_EQ(numeric_rank(T), 6);
    EXPECT_EQ(numeric_rank(V), 2);
    EXPECT_LT((T * V).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((T + V - Mat::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((b * T - T.transpose() * b).cwiseAbs().maxCoeff(), 1e-10);
    const Mat I = lck.complex_structure();
    EXPECT_LT(((Mat::Identity(8, 8) - T) * I * T).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(((Mat::Identity(8, 8) - V) * I * V).cwiseAbs().maxCoeff(), 1e-10);

    const Mat D = distribution_projector(lchk, DistributionName::D, p);
    const Mat S = distribution_projector(lchk, DistributionName::S, p);
    EXPECT_EQ(numeric_rank(D), 4);
    EXPECT_EQ(numeric_rank(S), 4);
    EXPECT_LT((D * S).cwiseAbs().maxCoeff(), 1e-10);
    for (int a = 0; a < 3; ++a)
      EXPECT_LT(((Mat::Identity(8, 8) - S) * lchk.complex_structure(a) * S).cwiseAbs().maxCoeff(), 1e-10);
    // V is spanned by the Lee field and its I-image
    const Vec sharp = lee_field(lck, p);
    EXPECT_LT((V * sharp - sharp).norm(), 1e-10 * sharp.norm());
  }
}

TEST(Distributions, KahlerOnT) {
  const auto vs = VaismanStructure::lck();
  for (const Vec& x : shell_points(vs, 10, 12)) EXPECT_LT(restricted_kahler_residual(vs, Point(vs.chart, x)), 1e-4);
}

TEST(Homothety, InvarianceAndSampling) {
  const auto vs = VaismanStructure::lchk(3.0);
  for (const Vec& x : shell_points(vs, 20, 13)) EXPECT_LT(homothety_defect(vs, Point(vs.chart, x)), 1e-10);
}

TEST(Holonomy, BlocksPreserved) {
  Rng rng(14);
  const auto lck = VaismanStructure::lck();
  const auto lchk = VaismanStructure::lchk();
  const auto rep1 = holonomy_block_check(WeylConnection{lck, {}}, DistributionName::T, DistributionName::V,
                                         sample_loops(lck, rng, 5, 0.1));
  EXPECT_EQ(rep1.loops, 5);
  EXPECT_LT(rep1.off_block, 1e-4);
  EXPECT_FALSE(rep1.identity_checked);
  const auto rep2 = holonomy_block_check(WeylConnection{lchk, {}}, DistributionName::D, DistributionName::S,
                                         sample_loops(lchk, rng, 5, 0.1));
  EXPECT_LT(rep2.off_block, 1e-4);
  EXPECT_TRUE(rep2.identity_checked);
  EXPECT_LT(rep2.identity_defect, 1e-4);
}

TEST(Holonomy, LeviCivitaHolonomyIsNontrivial) {
  // the conformal metric itself is curved, so the block check is not vacuous for its own connection
  Rng rng(15);
  const auto vs = VaismanStructure::lck();
  const auto loops = sample_loops(vs, rng, 1, 0.3);
  const Mat H = loop_holonomy(levi_civita(vs.metric()), loops.front(), 8, 24);
  EXPECT_GT((H - Mat::Identity(8, 8)).norm(), 1e-4);
}
