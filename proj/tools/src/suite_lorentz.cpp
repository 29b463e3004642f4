#include <algorithm>
#include <cmath>

#include "hopfmod/lorentz.hpp"
#include "suite_support.hpp"

namespace hopf::cli {

namespace {

Profile make_profile(const std::string& name, const LorentzConfig& lc) {
  if (name == "constant") return Profile::constant(lc.amplitude);
  if (name == "gaussian") return Profile::gaussian(lc.pulse_amplitude, lc.pulse_center, lc.pulse_width);
  return Profile::zero();
}

// Plane-wave spin connection along d_u: omega^{01} = omega^{13} = a x / sqrt2, omega^{02} = omega^{23} = a y / sqrt2.
Eigen::Matrix4d plane_wave_omega_u(const Profile& a, const Vec& x) {
  Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
  const double s = a(x[0]) / std::sqrt(2.0);
  w(0, 1) = w(1, 3) = s * x[2];
  w(0, 2) = w(2, 3) = s * x[3];
  return w - Eigen::Matrix4d(w.transpose());
}

double ratio_spread(const SpinorField& a, const SpinorField& b, const std::vector<Vec>& pts) {
  const Eigen::Vector4cd a0 = a.eval(pts.front()).c, b0 = b.eval(pts.front()).c;
  const cplx k = a0.dot(b0) / a0.squaredNorm();
  double worst = 0.0;
  for (const auto& x : pts) {
    const Eigen::Vector4cd av = a.eval(x).c, bv = b.eval(x).c;
    worst = std::max(worst, (bv - k * av).norm() / bv.norm());
  }
  return worst;
}

Eigen::Matrix4d boost_rotation(const Vec& x) {
  const double phi = 0.3 * x[2] + 0.2 * x[0], th = 0.4 * x[3] - 0.1 * x[1];
  Eigen::Matrix4d B = Eigen::Matrix4d::Identity(), R = Eigen::Matrix4d::Identity();
  B(0, 0) = B(1, 1) = std::cosh(phi);
  B(0, 1) = B(1, 0) = std::sinh(phi);
  R(1, 1) = R(2, 2) = std::cos(th);
  R(1, 2) = -std::sin(th);
  R(2, 1) = std::sin(th);
  return B * R;
}

// Quadratic holomorphic map C^2 -> C^4, base coordinates (z1, z2) = (x0 + i x1, x2 + i x3).
Vec holomorphic_map(const Vec& x) {
  const cplx z1(x[0], x[1]), z2(x[2], x[3]);
  const cplx w[4] = {z1 + 0.5 * z2, z1 * z1 + 2.0, z1 * z2 - cplx(0.3, 0.2) * z2, 0.7 * z2 * z2 + cplx(0, 1) * z1};
  Vec out(8);
  for (int k = 0; k < 4; ++k) {
    out[2 * k] = w[k].real();
    out[2 * k + 1] = w[k].imag();
  }
  return out;
}

MetricField euclidean4() {
  MetricField g;
  g.dim = 4;
  g.positive = 4;
  g.eval = [](const Vec&) -> Mat { return Mat::Identity(4, 4); };
  return g;
}

}  // namespace

void run_lorentz(Recorder& r) {
  const RunConfig& cfg = r.cfg();
  const LorentzConfig& lc = cfg.lorentz;
  Rng rng = suite_rng(cfg, 0xC3);
  const double w = lc.half_width;
  const Chart region = Chart::box(Vec::Constant(4, -w), Vec::Constant(4, w), {"u", "v", "x", "y"});
  const Chart inner = Chart::box(Vec::Constant(4, -0.8 * w), Vec::Constant(4, 0.8 * w));
  ParallelSpinorOptions opt;
  opt.nodes_per_axis = lc.grid_nodes;
  opt.substeps = lc.substeps;
  opt.accept = 1.0;  // residuals are judged here, not by the solver

  std::vector<Vec> pts;
  for (int i = 0; i < cfg.samples.lorentz_points; ++i) pts.push_back(inner.sample(rng));

  const DiracSpinor seed_L(0, 0, 1, 0), seed_R(1, 0, 0, 0);
  const DiracSpinor generic_L(0, 0, cplx(0.4, -0.3), cplx(1.2, 0.5)), generic_R(cplx(-0.7, 0.2), cplx(0.3, 0.9), 0, 0);

  for (const auto& pname : lc.profiles) {
    const PPWaveMetric m{make_profile(pname, lc)};
    const Tetrad t{m};
    const std::string tag = "lorentz." + pname;

    double ortho = 0.0, antisym = 0.0, oracle = 0.0;
    for (const auto& x : pts) {
      ortho = std::max(ortho, orthonormality_defect(t, x));
      const SpinConnection sc = spin_connection(m, t, Point(region, x));
      for (int mu = 0; mu < 4; ++mu) {
        antisym = std::max(antisym, (sc.w[mu] + sc.w[mu].transpose()).cwiseAbs().maxCoeff());
        const Eigen::Matrix4d want = mu == 0 ? plane_wave_omega_u(m.a, x) : Eigen::Matrix4d::Zero();
        oracle = std::max(oracle, (sc.w[mu] - want).cwiseAbs().maxCoeff());
      }
    }
    r.below(tag + ".tetrad_orthonormal", "brinkmann.tetrad", ortho, Tier::exact);
    r.below(tag + ".spin_connection_antisymmetric", "brinkmann.spin_connection", antisym, Tier::exact);
    r.below(tag + ".spin_connection_oracle", "brinkmann.spin_connection", oracle, Tier::first, "plane-wave formula");

    for (Chirality ch : {Chirality::L, Chirality::R}) {
      const std::string ct = tag + (ch == Chirality::L ? ".L" : ".R");
      const DiracSpinor& seed = ch == Chirality::L ? seed_L : seed_R;
      const DiracSpinor& generic = ch == Chirality::L ? generic_L : generic_R;
      const auto sol = solve_parallel_spinor(m, region, ch, seed, opt);
      r.below(ct + ".parallel_spinor", "brinkmann.parallel_spinor", sol.residual, r.fixed(1e-8),
              std::to_string(sol.grid_points) + " grid points");
      r.info(ct + ".kernel_dimension", "brinkmann.parallel_spinor", sol.kernel_dimension);

      const double sign = ch == Chirality::L ? 1.0 : -1.0;  // gamma5 eigenvalue of the block
      double chir = 0.0;
      for (const auto& x : pts) {
        const Eigen::Vector4cd p = sol.field.eval(x).c;
        chir = std::max(chir, (gamma5().m * p - sign * p).norm() / p.norm());
      }
      r.below(ct + ".chiral", "brinkmann.parallel_spinor_chiral", chir, Tier::exact);

      // In flat space every constant spinor is parallel, so only complex multiples are compared there.
      const DiracSpinor second = sol.kernel_dimension == 1 ? generic : DiracSpinor(cplx(0.6, -1.1) * seed.c);
      const auto sol2 = solve_parallel_spinor(m, region, ch, second, opt);
      r.below(ct + ".unique_up_to_scale", "brinkmann.parallel_spinor_unique", ratio_spread(sol.field, sol2.field, pts),
              r.fixed(1e-8), sol.kernel_dimension == 1 ? "generic second seed" : "flat: scaled seed");

      double null = 0.0, par = 0.0;
      const Connection lcg = levi_civita(m.metric());
      TensorField N{4, 1, 0, [&](const Vec& y) { return dirac_current(sol.field, t, Point(region, y)); }};
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point p(region, pts[i]);
        const Vec n = dirac_current(sol.field, t, p);
        null = std::max(null, std::abs(n.dot(m.at(p.x) * n)) / n.squaredNorm());
        if (i < 10)
          for (int mu = 0; mu < 4; ++mu)
            par = std::max(par, covariant_derivative(lcg, N, Vec::Unit(4, mu), p).cwiseAbs().maxCoeff());
      }
      r.below(ct + ".current_null", "brinkmann.dirac_current", null, Tier::exact, "|g(N,N)| / |N|^2");
      r.below(ct + ".current_parallel", "brinkmann.dirac_current_killing", par, Tier::first);
    }
  }

  {
    const Eigen::Vector4d n = dirac_current_frame(DiracSpinor(0, 0, 1, 0));
    const double dev = (n - n[0] * Eigen::Vector4d(1, 0, 0, 1)).cwiseAbs().maxCoeff();
    r.below("lorentz.current_direction", "brinkmann.dirac_current", dev, Tier::exact, "psi = (0,0,1,0) gives e0 + e3");
  }

  // sections over Minkowski
  const PPWaveMetric mink{Profile::zero()};
  const VaismanStructure flat = VaismanStructure::flat();
  const VaismanStructure lck = VaismanStructure::lck(cfg.lambda);
  SpinorField unit_L{SpinorField::Tag::L, [](const Vec&) { return DiracSpinor(0, 0, 1, 0); }};
  const SwannSection sec = build_section(unit_L);
  {
    double triv = 0.0, scale = 0.0, proj = 0.0, unit = 0.0;
    const Quaternion g = Quaternion(rng.unit_vec(4));
    const SwannSection scaled = compose(sec, {cfg.lambda, Quaternion::real(1)});
    const SwannSection rotated = compose(sec, {1.0, g});
    for (const auto& x : pts) {
      const Vec s = sec.eval(x), sl = scaled.eval(x), sr = rotated.eval(x);
      triv = std::max({triv, (s.head<4>() - x).cwiseAbs().maxCoeff(), (s.tail<4>() - Eigen::Vector4d(1, 0, 0, 0)).cwiseAbs().maxCoeff()});
      scale = std::max(scale, (sl - cfg.lambda * s).cwiseAbs().maxCoeff());
      const Quaternion a(Eigen::Vector4d(sl.head<4>())), b(Eigen::Vector4d(sl.tail<4>()));
      proj = std::max(proj, ((a * b.inverse()).vec() - Eigen::Vector4d(x)).cwiseAbs().maxCoeff());
      unit = std::max(unit, std::abs(sr.tail<4>().norm() - s.tail<4>().norm()));
    }
    r.below("lorentz.section.trivialization", "swann.section", triv, Tier::exact, "constant spinor gives (x, 1)");
    r.below("lorentz.section.homothety", "swann.equivalence_class", std::max(scale, proj), Tier::exact);
    r.below("lorentz.section.su2_unitary", "swann.equivalence_class", unit, Tier::exact);
  }
  {
    SwannSection constant{[](const Vec&) { return (Vec(8) << 1.0, 0.5, -0.3, 0.2, 0.8, 0.1, 0.4, -0.6).finished(); }, {}};
    SwannSection holo{holomorphic_map, {}};
    const MetricField e4 = euclidean4();
    double tc = 0.0, th = 0.0, dflat = 0.0, holo_res = 0.0, tlin = 0.0;
    for (int i = 0; i < cfg.samples.section_points; ++i) {
      const Point p(region, pts[static_cast<std::size_t>(i) % pts.size()]);
      tc = std::max(tc, tension_field(constant, flat, mink, p).norm);
      tlin = std::max(tlin, tension_field(sec, flat, mink, p).norm);
      th = std::max(th, tension_field(holo, WeylConnection{flat, {}}.connection(), e4, flat_connection(4), p).norm);
      SpinorField const_psi{SpinorField::Tag::L, [](const Vec&) { return DiracSpinor(0, 0, cplx(0.6, 0.2), 0.3); }};
      dflat = std::max(dflat, dirac_residual(constant, const_psi, flat, mink, p).norm);
      holo_res = std::max(holo_res, holomorphy_residual(sec, flat, p));
    }
    r.below("lorentz.tension.flat_constant", "harmonic.tension_field", tc, r.fixed(1e-8));
    r.below("lorentz.tension.flat_linear_section", "harmonic.tension_field", tlin, Tier::first);
    r.below("lorentz.tension.holomorphic_map", "harmonic.holomorphic_is_harmonic", th, Tier::second,
            "quadratic holomorphic map between flat Kahler spaces");
    r.below("lorentz.dirac.flat_residual", "harmonic.dirac_rewriting", dflat, r.fixed(1e-8));
    r.below("lorentz.section.holomorphy_flat", "swann.holomorphic_section", holo_res, Tier::first);
  }
  {
    // Levi-Civita terms of the Dirac rewriting, in a tetrad twisted by a position-dependent Lorentz transformation
    const PPWaveMetric pw{Profile::constant(lc.amplitude)};
    const Tetrad t{pw};
    const FrameField twisted = [t](const Vec& x) -> Eigen::Matrix4d { return t.frame(x) * boost_rotation(x); };
    SwannSection curved{[](const Vec& x) {
                          Vec s(8);
                          s << x[0] * x[1] + 1.0, std::sin(x[2]), x[3] * x[3], x[0] - x[2], std::exp(0.3 * x[1]), 0.5,
                              x[1] * x[3], std::cos(x[0]);
                          return s;
                        },
                        {}};
    double diff = 0.0, vmin = 1e300, ortho = 0.0;
    for (int i = 0; i < cfg.samples.section_points; ++i) {
      const Point p(region, pts[static_cast<std::size_t>(i) % pts.size()]);
      const Eigen::Matrix4d E = twisted(p.x);
      const Eigen::Matrix4d G = E.transpose() * pw.at(p.x) * E;
      ortho = std::max(ortho, (G - Eigen::Matrix4d(Eigen::Vector4d(1, -1, -1, -1).asDiagonal())).cwiseAbs().maxCoeff());
      const LcCancellation c = lc_cancellation(curved, twisted, pw.metric(), p);
      diff = std::max(diff, c.difference);
      vmin = std::min(vmin, c.v_norm);
    }
    r.below("lorentz.dirac.lc_cancellation", "harmonic.dirac_rewriting", diff, Tier::first);
    r.info("lorentz.dirac.lc_cancellation_v_norm", "harmonic.dirac_rewriting", vmin,
           "smallest |sum eta_aa nabla e_a e_a| over the samples");
    r.below("lorentz.dirac.twisted_frame_orthonormal", "brinkmann.tetrad", ortho, Tier::exact);
  }
  {
    // equivariance of the tension under the class action, Weyl target
    SwannSection bent{[](const Vec& x) {
                        const Quaternion s(1.0 + 0.2 * x[0] * x[0], 0.3 * x[1], -0.1 * x[2] * x[3], 0.25 * x[3]);
                        const Quaternion b(Eigen::Vector4d(x.head<4>()));
                        Vec c(8);
                        c.head<4>() = (b * s).vec();
                        c.tail<4>() = s.vec();
                        return c;
                      },
                      {}};
    const ClassAction gam{cfg.lambda, Quaternion(rng.unit_vec(4))};
    const SwannSection moved = compose(bent, gam);
    double worst = 0.0;
    for (int i = 0; i < cfg.samples.section_points; ++i) {
      const Point p(region, pts[static_cast<std::size_t>(i) % pts.size()]);
      const Vec t0 = tension_field(bent, lck, mink, p).tau;
      const Vec t1 = tension_field(moved, lck, mink, p).tau;
      worst = std::max(worst, (t1 - gam.apply(t0)).norm() / std::max(1.0, t1.norm()));
    }
    r.below("lorentz.tension.class_equivariance", "swann.equivalence_class", worst, Tier::first);
  }
  {
    // the configuration of the construction itself: diagnostics only
    double tau = 0.0, dres = 0.0, ts = 0.0, holo_pw = 0.0;
    const PPWaveMetric pw{Profile::constant(lc.amplitude)};
    ParallelSpinorOptions o = opt;
    o.nodes_per_axis = std::min(opt.nodes_per_axis, 4);
    const auto sol_m = solve_parallel_spinor(mink, region, Chirality::L, seed_L, o);
    const auto sol_p = solve_parallel_spinor(pw, region, Chirality::L, seed_L, o);
    const SwannSection sm = build_section(sol_m.field), sp = build_section(sol_p.field);
    for (int i = 0; i < std::min(cfg.samples.section_points, 10); ++i) {
      const Point p(region, pts[static_cast<std::size_t>(i) % pts.size()]);
      tau = std::max(tau, tension_field(sm, lck, mink, p).norm);
      const auto d = dirac_residual(sp, sol_p.field, lck, pw, p);
      dres = std::max(dres, d.norm);
      ts = std::max(ts, d.tension_spinor);
      holo_pw = std::max(holo_pw, holomorphy_residual(sp, lck, p));
    }
    r.info("lorentz.reference_config.tension", "harmonic.parallel_spinor_section", tau,
           "Minkowski base, parallel spinor section, Vaisman target");
    r.info("lorentz.plane_wave.dirac_residual", "harmonic.dirac_rewriting", dres);
    r.info("lorentz.plane_wave.tension_times_spinor", "harmonic.dirac_rewriting", ts);
    r.info("lorentz.plane_wave.holomorphy", "swann.holomorphic_section", holo_pw);
  }
}

}  // namespace hopf::cli
