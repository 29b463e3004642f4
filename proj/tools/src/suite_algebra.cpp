#include <cmath>

#include "hopfmod/algebra.hpp"
#include "suite_support.hpp"

namespace hopf::cli {

namespace {

Quaternion random_quat(Rng& rng) { return Quaternion(rng.uniform_vec(4, -1.0, 1.0)); }

ImaginaryUnit random_unit(Rng& rng) {
  const Vec u = rng.unit_vec(3);
  return {u[0], u[1], u[2]};
}

Eigen::Matrix4d action(Side s, double a, double b, double c) { return structure_matrix({s, {a, b, c}}); }

JordanElement random_jordan(Rng& rng) {
  const Vec v = rng.uniform_vec(4, -1.0, 1.0);
  return {v[0], v[1], v[2], v[3]};
}

double jdiff(const JordanElement& a, const JordanElement& b) {
  return std::max({std::abs(a.t - b.t), std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

}  // namespace

void run_algebra(Recorder& r) {
  const RunConfig& cfg = r.cfg();
  Rng rng = suite_rng(cfg, 0xA1);
  const Quaternion one = Quaternion::real(1), I = Quaternion::i(), J = Quaternion::j(), K = Quaternion::k();

  {
    long bad = 0;
    bad += !(I * J == K) + !(J * K == I) + !(K * I == J);
    bad += !(I * I == -one) + !(J * J == -one) + !(K * K == -one) + !(I * J * K == -one);
    bad += !((one + I) * (one + J) == Quaternion(1, 1, 1, 1));
    r.exact("algebra.quaternion.units", "quaternion.hamilton_product", bad);
  }
  {
    double norm_dev = 0.0, conj_dev = 0.0;
    for (int i = 0; i < cfg.samples.quaternion_pairs; ++i) {
      const Quaternion a = random_quat(rng), b = random_quat(rng);
      norm_dev = std::max(norm_dev, std::abs((a * b).norm() - a.norm() * b.norm()));
      const Quaternion n = a * a.conj();
      conj_dev = std::max({conj_dev, std::abs(n.w - a.norm2()), std::abs(n.x), std::abs(n.y), std::abs(n.z)});
    }
    r.below("algebra.quaternion.norm_multiplicative", "quaternion.norm", norm_dev, r.fixed(1e-12));
    r.below("algebra.quaternion.conjugate_norm", "quaternion.conjugation", conj_dev, r.fixed(1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < cfg.samples.hypercomplex_units; ++i) {
      const ImaginaryUnit u = random_unit(rng);
      for (Side s : {Side::negative, Side::positive}) {
        const Eigen::Matrix4d A = structure_matrix({s, u});
        worst = std::max(worst, (A * A + Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff());
        const Eigen::Vector4d X = rng.uniform_vec(4, -1, 1);
        worst = std::max(worst, (apply_structure({s, u}, apply_structure({s, u}, X)) + X).cwiseAbs().maxCoeff());
      }
    }
    r.below("algebra.hypercomplex.square_minus_identity", "hypercomplex.complex_structure", worst, r.fixed(1e-12),
            std::to_string(cfg.samples.hypercomplex_units) + " units, both sides");
  }
  {
    // basis structures have integer entries, so products are exact in double
    const Eigen::Matrix4d Il = action(Side::negative, 1, 0, 0), Jl = action(Side::negative, 0, 1, 0),
                          Kl = action(Side::negative, 0, 0, 1);
    const Eigen::Matrix4d Ir = action(Side::positive, 1, 0, 0), Jr = action(Side::positive, 0, 1, 0),
                          Kr = action(Side::positive, 0, 0, 1);
    long bad = 0;
    bad += (Il * Jl != Kl);                  // apply J then I
    bad += ((-Jr) * (-Ir) != -Kr);            // apply -I then -J
    bad += (Jl * Kl != Il) + (Kl * Il != Jl);
    r.exact("algebra.hypercomplex.composition_rule", "hypercomplex.multiplication_rule", bad);

    long nc = 0;
    for (const auto& L : {Il, Jl, Kl})
      for (const auto& R : {Ir, Jr, Kr}) nc += (L * R != R * L);
    r.exact("algebra.hypercomplex.left_right_commute", "hypercomplex.commuting_actions", nc);
    double worst = 0.0;
    for (int i = 0; i < cfg.samples.hypercomplex_units; ++i) {
      const Eigen::Matrix4d L = structure_matrix({Side::negative, random_unit(rng)});
      const Eigen::Matrix4d R = structure_matrix({Side::positive, random_unit(rng)});
      worst = std::max(worst, (L * R - R * L).cwiseAbs().maxCoeff());
    }
    r.below("algebra.hypercomplex.left_right_commute_random", "hypercomplex.commuting_actions", worst, r.fixed(1e-14));
  }
  {
    long bad = 0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        const auto g = gamma_exact(mu) * gamma_exact(nu) + gamma_exact(nu) * gamma_exact(mu);
        const std::int64_t want = mu == nu ? 2 * conventions::eta[mu] : 0;
        bad += !(g == GaussMatrix<4>::identity(want));
      }
    r.exact("algebra.clifford.anticommutator", "clifford.chiral_representation", bad);

    const auto g5 = gamma5_exact();
    const auto id = GaussMatrix<4>::identity();
    long pbad = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const GaussInt e = g5(i, j);
        if (i != j && !(e == GaussInt{})) ++pbad;
        if (i == j && !(e == GaussInt{1, 0} || e == GaussInt{-1, 0})) ++pbad;
      }
    GaussMatrix<4> Pp, Pm;
    if (!(id + g5).divide(2, Pp) || !(id - g5).divide(2, Pm)) ++pbad;
    pbad += !(Pp * Pp == Pp) + !(Pm * Pm == Pm) + !(Pp * Pm).is_zero() + !(Pp + Pm == id);
    for (int mu = 0; mu < 4; ++mu) pbad += !(g5 * gamma_exact(mu) + gamma_exact(mu) * g5).is_zero();
    r.exact("algebra.clifford.gamma5_projectors", "clifford.chirality", pbad);
  }
  {
    long bad = 0;
    bad += !(jordan_mul_exact(pauli_exact(1), pauli_exact(1)) == pauli_exact(0));
    for (int mu = 0; mu < 4; ++mu) bad += !(jordan_mul_exact(pauli_exact(0), pauli_exact(mu)) == pauli_exact(mu));
    bad += !jordan_mul_exact(pauli_exact(1), pauli_exact(2)).is_zero();
    r.exact("algebra.jordan.pauli_products", "jordan.spin_factor", bad);

    double ident = 0.0, comm = 0.0;
    for (int i = 0; i < cfg.samples.jordan_samples; ++i) {
      const JordanElement a = random_jordan(rng), b = random_jordan(rng);
      const JordanElement a2 = jordan_mul(a, a);
      ident = std::max(ident, jdiff(jordan_mul(a2, jordan_mul(a, b)), jordan_mul(a, jordan_mul(a2, b))));
      comm = std::max(comm, jdiff(jordan_mul(a, b), jordan_mul(b, a)));
    }
    r.below("algebra.jordan.identity", "jordan.identity", ident, r.fixed(1e-12));
    r.below("algebra.jordan.commutative", "jordan.identity", comm, r.fixed(1e-15));
  }
  {
    // sigma -> gamma^mu gamma^0 closes under the Jordan product: e_0 unit, e_j e_k = delta_jk e_0
    long bad = 0;
    std::array<GaussMatrix<4>, 4> s;
    for (int mu = 0; mu < 4; ++mu) s[mu] = gamma_exact(mu) * gamma_exact(0);
    bad += !(s[0] == GaussMatrix<4>::identity());
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        GaussMatrix<4> prod;
        if (!(s[a] * s[b] + s[b] * s[a]).divide(2, prod)) {
          ++bad;
          continue;
        }
        GaussMatrix<4> want;
        if (a == 0) want = s[b];
        else if (b == 0) want = s[a];
        else if (a == b) want = GaussMatrix<4>::identity();
        bad += !(prod == want);
      }
    for (int mu = 0; mu < 4; ++mu) {
      const Eigen::Matrix4cd m = jordan_to_clifford(mu).m;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) bad += m(i, j) != cplx(double(s[mu](i, j).re), double(s[mu](i, j).im));
    }
    r.exact("algebra.jordan.clifford_closure", "jordan.clifford_embedding", bad);
  }
  {
    // acting with sigma^{mu 0} on the inverted field reproduces the chiral sigma action blockwise
    double worst = 0.0;
    long swap_bad = 0;
    for (int i = 0; i < 20; ++i) {
      const Vec re = rng.uniform_vec(4, -1, 1), im = rng.uniform_vec(4, -1, 1);
      DiracSpinor psi;
      for (int k = 0; k < 4; ++k) psi.c[k] = cplx(re[k], im[k]);
      const DiracSpinor t = psi.tilde();
      swap_bad += !(t.right() == psi.left() && t.left() == psi.right());
      for (int mu = 0; mu < 4; ++mu) {
        const Eigen::Vector4cd out = jordan_to_clifford(mu).m * t.c;
        worst = std::max(worst, (out.head<2>() - chiral_sigma_action(psi.left(), Chirality::L, mu)).cwiseAbs().maxCoeff());
        worst = std::max(worst, (out.tail<2>() - chiral_sigma_action(psi.right(), Chirality::R, mu)).cwiseAbs().maxCoeff());
      }
    }
    r.below("algebra.chiral.sigma_consistency", "spinor.chiral_sigma_action", worst, r.fixed(1e-15));
    r.exact("algebra.spinor.inverted_swap", "spinor.inverted_field", swap_bad);
    const Eigen::Matrix4cd PL = chiral_projector(Chirality::L), PR = chiral_projector(Chirality::R);
    const double proj = std::max({(PL * PL - PL).cwiseAbs().maxCoeff(), (PR * PR - PR).cwiseAbs().maxCoeff(),
                                  (PL * PR).cwiseAbs().maxCoeff(),
                                  (PL + PR - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff()});
    r.below("algebra.spinor.chiral_projectors", "spinor.chirality_blocks", proj, r.fixed(1e-15));
  }
}

}  // namespace hopf::cli
