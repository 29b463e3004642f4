#include <algorithm>
#include <cmath>

#include "hopfmod/quantize.hpp"
#include "suite_support.hpp"

namespace hopf::cli {

namespace {

// Independent Christoffel slice of the plane wave (coordinates u, v, x, y): e^0 = ((1 - H/2) du + dv) / sqrt2,
// so Gamma^0 = Gamma^v / sqrt2 + (1 - H/2) Gamma^u / sqrt2 with Gamma^u = 0.
double coupling_oracle(const Profile& a, const Vec& X, const Vec& x) {
  const double h = 1e-6;
  const double da = (a(x[0] + h) - a(x[0] - h)) / (2 * h);
  const double au = a(x[0]);
  const double dHu = da * (x[2] * x[2] + x[3] * x[3]);
  const double gvuu = -0.5 * dHu, gvux = -au * x[2], gvuy = -au * x[3];
  return (X[0] * X[0] * gvuu + 2 * X[0] * X[2] * gvux + 2 * X[0] * X[3] * gvuy) / std::sqrt(2.0);
}

Germ random_germ(Rng& rng, const std::vector<Monomial>& basis) {
  Germ g;
  const int terms = 1 + static_cast<int>(rng.next() % 6);
  for (int i = 0; i < terms; ++i) {
    const auto& m = basis[rng.next() % basis.size()];
    g.add(m, cplx(static_cast<double>(static_cast<int>(rng.next() % 9) - 4), static_cast<double>(static_cast<int>(rng.next() % 5) - 2)));
  }
  return g;
}

}  // namespace

void run_quantize(Recorder& r) {
  const RunConfig& cfg = r.cfg();
  Rng rng = suite_rng(cfg, 0xE5);

  {
    const auto small = check_ccr_car(2);
    r.exact("quantize.ccr_car.degree2", "sheaf_operators.commutation_relations", small.failures,
            std::to_string(small.basis_size) + " monomials");
    const auto full = check_ccr_car(cfg.germ_max_degree);
    const std::string n = std::to_string(full.basis_size) + " monomials, " + std::to_string(full.relations_checked) +
                          " relations";
    r.exact("quantize.ccr_car.full_basis", "sheaf_operators.commutation_relations", full.failures, n);
    r.exact("quantize.ccr", "sheaf_operators.bosonic", !full.ccr);
    r.exact("quantize.car", "sheaf_operators.fermionic", !full.car);
    r.exact("quantize.mixed_sectors_commute", "sheaf_operators.commutation_relations", !full.mixed);
    r.exact("quantize.composite_anticommute", "sheaf_operators.fermi_statistics", !full.composite);
  }
  {
    long bad = 0;
    const Germ vac = Germ::vacuum();
    for (int i = 0; i < kZGenerators; ++i) bad += !apply_operator(FieldOperator::z_op(OpKind::annihilate, i), vac).is_zero();
    for (int i = 0; i < kQGenerators; ++i) bad += !apply_operator({OpKind::annihilate, Sector::q, i}, vac).is_zero();
    // Z^i (z^i * 1) = 1
    for (int i = 0; i < kZGenerators; ++i)
      bad += !(apply_operator(FieldOperator::z_op(OpKind::annihilate, i),
                              apply_operator(FieldOperator::z_op(OpKind::create, i), vac)) == vac);
    for (int i = 0; i < kQGenerators; ++i) {
      const FieldOperator q{OpKind::create, Sector::q, i};
      bad += !apply_operator(q, apply_operator(q, Germ::from(Monomial{{1, 0, 2, 0}, 0b101000}))).is_zero();
    }
    r.exact("quantize.vacuum_and_alternation", "sheaf_operators.vacuum", bad);

    const auto basis = monomial_basis(cfg.germ_max_degree);
    long car = 0;
    const FieldOperator q{OpKind::create, Sector::q, 0}, Q{OpKind::annihilate, Sector::q, 0};
    for (int i = 0; i < cfg.samples.random_germs; ++i) {
      const Germ g = random_germ(rng, basis);
      car += !(apply_operator(q, apply_operator(Q, g)) + apply_operator(Q, apply_operator(q, g)) == g);
    }
    r.exact("quantize.car_random_germs", "sheaf_operators.fermionic", car,
            std::to_string(cfg.samples.random_germs) + " germs");
  }
  {
    const Chart region = Chart::box(Vec::Constant(4, -1.0), Vec::Constant(4, 1.0));
    const PPWaveMetric mink{Profile::zero()};
    const PPWaveMetric pw{Profile::constant(cfg.lorentz.amplitude)};
    const PPWaveMetric pulse{Profile::gaussian(cfg.lorentz.pulse_amplitude, cfg.lorentz.pulse_center, cfg.lorentz.pulse_width)};
    double mink_a = 0.0, mink_slice = 0.0, rel = 0.0, bilin = 0.0, pw_slice = 0.0, pw_a = 0.0;
    for (int i = 0; i < cfg.samples.section_points; ++i) {
      const Point p(region, region.sample(rng) * 0.8);
      const Vec X = rng.uniform_vec(4, -1, 1);
      mink_a = std::max(mink_a, std::abs(coupling_field(mink, X, p)));
      mink_slice = std::max(mink_slice, gamma0_slice(mink, p).cwiseAbs().maxCoeff());
      for (const PPWaveMetric* m : {&pw, &pulse}) {
        const double a = coupling_field(*m, X, p), want = coupling_oracle(m->a, X, p.x);
        rel = std::max(rel, std::abs(a - want) / std::max(std::abs(want), 1e-3));
        bilin = std::max(bilin, std::abs(coupling_field(*m, 2.0 * X, p) - 4.0 * a) / std::max(std::abs(a), 1e-3));
      }
      pw_slice = std::max(pw_slice, gamma0_slice(pw, p).cwiseAbs().maxCoeff());
      pw_a = std::max(pw_a, std::abs(coupling_field(pw, X, p)));
    }
    r.below("quantize.coupling.minkowski_zero", "coupling_field.flat", std::max(mink_a, mink_slice), Tier::exact);
    r.below("quantize.coupling.plane_wave_oracle", "coupling_field.plane_wave", rel, Tier::second, "relative");
    r.below("quantize.coupling.bilinear", "coupling_field.plane_wave", bilin, Tier::first, "X -> 2X quadruples");
    r.above("quantize.coupling.nonzero_with_slice", "coupling_field.plane_wave", std::min(pw_slice, pw_a), 1e-6,
            "plane wave: slice and coupling both nonzero");
  }
  {
    Rng g = suite_rng(cfg, 0xE6);
    const auto su3 = su3_generators();
    const auto sp1 = sp1_generators();
    double zero = 0.0, u1 = 0.0, imag = 0.0, singlet = 0.0;
    for (int i = 0; i < 20; ++i) {
      VectorSpinor psi{Eigen::MatrixXcd::Zero(3, 2), i % 2 == 0 ? Chirality::L : Chirality::R};
      for (int k = 0; k < 3; ++k)
        for (int s = 0; s < 2; ++s) psi.c(k, s) = cplx(g.uniform(-1, 1), g.uniform(-1, 1));
      const double aX = g.uniform(-1, 1);
      zero = std::max(zero, current(psi, su3[static_cast<std::size_t>(i % 8)], 0.0).cwiseAbs().maxCoeff());
      for (const auto& Y : su3) imag = std::max(imag, current(psi, Y, aX).imag().cwiseAbs().maxCoeff());
      // u(1): a_X |v|^2 times the Weyl current of the spinor slot, with psi = v (x) chi
      Eigen::Vector3cd v;
      Eigen::Vector2cd chi;
      for (int k = 0; k < 3; ++k) v[k] = cplx(g.uniform(-1, 1), g.uniform(-1, 1));
      for (int k = 0; k < 2; ++k) chi[k] = cplx(g.uniform(-1, 1), g.uniform(-1, 1));
      VectorSpinor prod{v * chi.transpose(), psi.chirality};
      const Eigen::Vector4cd j = current(prod, u1_generator(3), aX);
      for (int mu = 0; mu < 4; ++mu) {
        const cplx want = aX * v.squaredNorm() * chi.dot(chiral_sigma_action(chi, psi.chirality, mu));
        u1 = std::max(u1, std::abs(j[mu] - want));
      }
      VectorSpinor one{chi.transpose(), psi.chirality};
      singlet = std::max(singlet, current(one, Eigen::MatrixXcd::Zero(1, 1), aX).cwiseAbs().maxCoeff());
      for (const auto& Y : sp1) {
        VectorSpinor two{psi.c.topRows(2), psi.chirality};
        imag = std::max(imag, current(two, Y, aX).imag().cwiseAbs().maxCoeff());
      }
    }
    r.below("quantize.current.zero_coupling", "fermion_current.coupling", zero, Tier::exact);
    r.below("quantize.current.u1_reduction", "fermion_current.u1", u1, r.fixed(1e-12));
    r.below("quantize.current.singlet", "fermion_current.trivial_rep", singlet, Tier::exact);
    r.below("quantize.current.real", "fermion_current.reality", imag, r.fixed(1e-12));
    long errs = 0;
    try {
      VectorSpinor psi{Eigen::MatrixXcd::Ones(2, 2), Chirality::L};
      (void)current(psi, pauli(1), 1.0);
      ++errs;
    } catch (const std::invalid_argument&) {
    }
    r.exact("quantize.current.rejects_hermitian", "fermion_current.coupling", errs);

    long sym = 0;
    double assembly = 0.0;
    for (const auto* gens : {&su3, &sp1}) {
      const auto F = homogeneous_curvature(*gens);
      const int k = F.dim;
      for (int m = 0; m < k; ++m)
        for (int n = 0; n < k; ++n) {
          sym += !(F.F[m * k + n] + F.F[n * k + m]).isZero(0.0);
          sym += !(F.Fprime[m * k + n] - F.Fprime[n * k + m]).isZero(0.0);
          Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(k, k);
          for (const auto& Y : *gens) want += 0.5 * (Y(m, n) - Y(n, m)) * Y;
          assembly = std::max(assembly, (F.F[m * k + n] - want).cwiseAbs().maxCoeff());
        }
    }
    const auto Fu = homogeneous_curvature({u1_generator(2)});
    for (const auto& f : Fu.F) sym += !f.isZero(0.0);  // i Id is symmetric: F vanishes
    r.exact("quantize.curvature.symmetry", "homogeneous_curvature.form", sym);
    r.below("quantize.curvature.assembly", "homogeneous_curvature.form", assembly, Tier::exact);
  }
  {
    const Chart region = Chart::box(Vec::Constant(4, -1.0), Vec::Constant(4, 1.0));
    const VaismanStructure lck = VaismanStructure::lck(cfg.lambda), flat = VaismanStructure::flat();
    const PPWaveMetric pw{Profile::constant(cfg.lorentz.amplitude)};
    const PPWaveMetric mink{Profile::zero()};
    MetricField e4;
    e4.dim = 4;
    e4.positive = 4;
    e4.eval = [](const Vec&) -> Mat { return Mat::Identity(4, 4); };
    double trace = 0.0, sym = 0.0;
    for (int i = 0; i < cfg.samples.section_points; ++i) {
      const Point p(region, region.sample(rng) * 0.8);
      const Mat A = Mat(rng.uniform_vec(32, -1, 1).reshaped(8, 4));
      const Vec c0 = rng.uniform_vec(8, 0.5, 1.5);
      SwannSection sec{[A, c0](const Vec& x) -> Vec {
                         Vec y = c0 + A * x;
                         y[0] += 0.3 * x[0] * x[1];
                         y[5] += 0.2 * std::sin(x[3]);
                         return y;
                       },
                       {}};
      for (const PPWaveMetric* m : {&pw, &mink}) {
        const auto se = stress_energy(sec, lck, *m, p);
        const Mat g = m->at(p.x);
        trace = std::max(trace, std::abs((g.inverse() * se.S).trace() - 3.0 * se.e));
        sym = std::max(sym, (se.S - se.S.transpose()).cwiseAbs().maxCoeff());
      }
    }
    r.below("quantize.stress.trace", "stress_energy.trace", trace, r.fixed(1e-8), "tr_g S = 3 e");
    r.below("quantize.stress.symmetric", "stress_energy.trace", sym, Tier::exact);

    const Point p(region, Vec::Constant(4, 0.2));
    SwannSection constant{[](const Vec&) { return Vec::Constant(8, 0.7); }, {}};
    const auto s0 = stress_energy(constant, lck, pw, p);
    r.exact("quantize.stress.constant_section", "stress_energy.vacuum",
            (s0.e != 0.0) + !s0.S.isZero(0.0) + s0.G.has_value());
    SwannSection ident{[](const Vec& x) {
                         Vec y = Vec::Zero(8);
                         y.head<4>() = x;
                         return y;
                       },
                       {}};
    const auto s1 = stress_energy(ident, flat.metric(), e4, p);
    const double dev = std::max({std::abs(s1.e - 4.0), std::abs(s1.S.trace() - 12.0),
                                 s1.G ? std::abs(*s1.G - 0.25) : 1.0});
    r.below("quantize.stress.identity_map", "stress_energy.trace", dev, Tier::exact, "e = 4, tr S = 12, G = 1/4");
  }
}

}  // namespace hopf::cli
