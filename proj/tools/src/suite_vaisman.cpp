#include <algorithm>
#include <cmath>

#include "hopfmod/vaisman.hpp"
#include "suite_support.hpp"

namespace hopf::cli {

namespace {

struct Affine {
  Vec a;
  Mat M;
  VectorField field() const {
    const Vec a_ = a;
    const Mat M_ = M;
    return [a_, M_](const Vec& x) -> Vec { return a_ + M_ * x; };
  }
};

Affine random_field(Rng& rng) { return {rng.uniform_vec(8, -1, 1), 0.3 * Mat(rng.uniform_vec(64, -1, 1).reshaped(8, 8))}; }

// Conformal factor e^{2 phi}, phi = -log|x|: Gamma^m_{nk} = d^m_n phi_k + d^m_k phi_n - d_{nk} phi_m
double conformal_oracle_error(const Christoffel& G, const Vec& x) {
  const int n = static_cast<int>(x.size());
  const Vec dphi = -x / x.squaredNorm();
  double e = 0.0;
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < n; ++k) {
        const double want = (m == a ? dphi[k] : 0.0) + (m == k ? dphi[a] : 0.0) - (a == k ? dphi[m] : 0.0);
        e = std::max(e, std::abs(G(m, a, k) - want));
      }
  return e;
}

struct PointStats {
  double closed = 0, parallel = 0, identity = 0, flipped = 0, homothety = 0, dual = 0, norm = 0, posdef = 0;
  double weyl_struct = 0, metricity = 0, kahler = 0;
  double idem = 0, complement = 0, orth = 0, selfadj = 0, invariant = 0, lee_fields = 0;
  long rank_bad = 0;
};

}  // namespace

void run_vaisman(Recorder& r) {
  const RunConfig& cfg = r.cfg();
  Rng rng = suite_rng(cfg, 0xB2);
  const VaismanStructure lck = VaismanStructure::lck(cfg.lambda);
  const VaismanStructure lchk = VaismanStructure::lchk(cfg.lambda);
  VaismanStructure lck_flip = lck, lchk_flip = lchk;
  lck_flip.lee_sign = -lck.lee_sign;
  lchk_flip.lee_sign = -lchk.lee_sign;

  r.info("vaisman.lee.sign", "lck.lee_form_sign", lck.lee_sign, "theta = s d log|x|^2, s resolved from the Lee identity");
  if (lchk.lee_sign != lck.lee_sign) r.exact("vaisman.lee.sign_agreement", "lchk.lee_form_sign", 1);

  const int npts = cfg.samples.vaisman_points;
  std::vector<Vec> pts;
  std::vector<std::array<Affine, 2>> fields;
  for (int i = 0; i < npts; ++i) {
    pts.push_back(lck.chart.sample_shell(rng, 0.5, 5.0));
    fields.push_back({random_field(rng), random_field(rng)});
  }

  // The Weyl constant c is fitted once, then checked everywhere.
  const WeylConnection w_lck{lck, {}}, w_lchk{lchk, {}};
  const double c_fit = weyl_metric_ratio(w_lck, Point(lck.chart, pts.front()));
  const double c = std::round(c_fit);

  for (const VaismanStructure* vs : {&lck, &lchk}) {
    const bool is_lck = vs->flavor == Flavor::LCK;
    const std::string tag = is_lck ? "lck" : "lchk";
    const VaismanStructure& flip = is_lck ? lck_flip : lchk_flip;
    const WeylConnection& wc = is_lck ? w_lck : w_lchk;

    auto stats = parallel_map<PointStats>(npts, cfg.workers, [&](int i) {
      PointStats s;
      const Point p(vs->chart, pts[static_cast<std::size_t>(i)]);
      s.closed = lee_closedness(*vs, p);
      s.parallel = lee_parallelism(*vs, p);
      s.identity = lee_identity_check(*vs, p).residual;
      s.flipped = lee_identity_check(flip, p).residual;
      s.homothety = homothety_defect(*vs, p);
      const Mat B = vaisman_metric(*vs, p);
      const Vec th = lee_form(*vs, p), sharp = lee_field(*vs, p);
      s.dual = (B * sharp - th).cwiseAbs().maxCoeff();
      s.norm = std::sqrt(th.dot(sharp));
      s.posdef = Eigen::SelfAdjointEigenSolver<Mat>(B).eigenvalues().minCoeff();
      const auto& f = fields[static_cast<std::size_t>(i)];
      for (int a = 0; a < vs->structure_count(); ++a)
        s.weyl_struct = std::max(s.weyl_struct,
                                 weyl_structure_defect(wc, vs->complex_structure(a), f[0].field(), f[1].field(), p));
      s.metricity = weyl_metricity_residual(wc, c, p);
      if (is_lck) s.kahler = restricted_kahler_residual(*vs, p);

      const auto first = is_lck ? DistributionName::T : DistributionName::D;
      const auto second = is_lck ? DistributionName::V : DistributionName::S;
      const Mat P1 = distribution_projector(*vs, first, p), P2 = distribution_projector(*vs, second, p);
      const Mat Id = Mat::Identity(8, 8);
      s.idem = std::max((P1 * P1 - P1).cwiseAbs().maxCoeff(), (P2 * P2 - P2).cwiseAbs().maxCoeff());
      s.complement = (P1 + P2 - Id).cwiseAbs().maxCoeff();
      s.orth = std::max((P1 * P2).cwiseAbs().maxCoeff(), (P2 * P1).cwiseAbs().maxCoeff());
      // b-orthogonal projectors are b-self-adjoint; compare in the rescaled metric |x|^2 b = e
      const Mat Bn = B / B.cwiseAbs().maxCoeff();
      s.selfadj = std::max((P1.transpose() * Bn - Bn * P1).cwiseAbs().maxCoeff(),
                           (P2.transpose() * Bn - Bn * P2).cwiseAbs().maxCoeff());
      const long want1 = is_lck ? 6 : 4, want2 = is_lck ? 2 : 4;
      s.rank_bad = (std::lround(P1.trace()) != want1 || std::abs(P1.trace() - want1) > 1e-10) +
                   (std::lround(P2.trace()) != want2 || std::abs(P2.trace() - want2) > 1e-10);
      for (int a = 0; a < vs->structure_count(); ++a) {
        const Mat Jm = vs->complex_structure(a);
        s.invariant = std::max({s.invariant, ((Id - P1) * Jm * P1).cwiseAbs().maxCoeff(),
                                ((Id - P2) * Jm * P2).cwiseAbs().maxCoeff()});
      }
      const auto lf = lee_type_fields(*vs, second, p.x);
      const double n0 = lf[0].dot(B * lf[0]);
      for (std::size_t a = 0; a < lf.size(); ++a)
        for (std::size_t b = 0; b < lf.size(); ++b) {
          const double v = lf[a].dot(B * lf[b]);
          s.lee_fields = std::max(s.lee_fields, std::abs(a == b ? v - n0 : v) / n0);
        }
      return s;
    });

    auto col = [&](double PointStats::*m) {
      std::vector<double> v;
      for (const auto& s : stats) v.push_back(s.*m);
      return v;
    };
    const std::string n = std::to_string(npts) + " points";
    r.below("vaisman." + tag + ".lee_closed", tag + ".lee_form_closed", max_of(col(&PointStats::closed)), Tier::first, n);
    r.below("vaisman." + tag + ".lee_parallel", tag + ".lee_form_parallel", max_of(col(&PointStats::parallel)),
            Tier::second, n);
    r.below("vaisman." + tag + ".lee_identity", tag + ".lee_identity", max_of(col(&PointStats::identity)), Tier::second,
            n);
    const auto fl = col(&PointStats::flipped);
    r.above("vaisman." + tag + ".lee_sign_detectable", tag + ".lee_identity", *std::min_element(fl.begin(), fl.end()),
            1e-2, "residual with the opposite sign");
    r.below("vaisman." + tag + ".homothety_invariance", tag + ".homothety", max_of(col(&PointStats::homothety)),
            Tier::exact, "metric, Lee form and projectors");
    r.below("vaisman." + tag + ".lee_field_dual", tag + ".lee_field", max_of(col(&PointStats::dual)), Tier::exact);
    const auto norms = col(&PointStats::norm);
    const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
    r.below("vaisman." + tag + ".lee_norm_constant", tag + ".lee_form_norm", *hi - *lo, r.fixed(1e-8));
    r.info("vaisman." + tag + ".lee_norm", tag + ".lee_form_norm", norms.front());
    const auto pd = col(&PointStats::posdef);
    r.above("vaisman." + tag + ".metric_positive", tag + ".metric", *std::min_element(pd.begin(), pd.end()), 0.0,
            "smallest eigenvalue");
    r.below("vaisman." + tag + ".weyl_preserves_structures", tag + ".weyl_connection",
            max_of(col(&PointStats::weyl_struct)), Tier::second, is_lck ? "I" : "I, J, K");
    r.below("vaisman." + tag + ".weyl_conformal_metricity", tag + ".weyl_connection", max_of(col(&PointStats::metricity)),
            Tier::second, "nabla^w b = c theta (x) b");
    if (is_lck)
      r.below("vaisman.lck.kahler_on_T", "lck.kahler_distribution", max_of(col(&PointStats::kahler)), Tier::second);
    const std::string pair = is_lck ? "T/V" : "D/S";
    long rank_bad = 0;
    for (const auto& s : stats) rank_bad += s.rank_bad;
    r.exact("vaisman." + tag + ".distribution_ranks", tag + ".distributions", rank_bad, pair);
    r.below("vaisman." + tag + ".distribution_idempotent", tag + ".distributions", max_of(col(&PointStats::idem)),
            Tier::exact, pair);
    r.below("vaisman." + tag + ".distribution_complement", tag + ".distributions", max_of(col(&PointStats::complement)),
            Tier::exact, pair);
    r.below("vaisman." + tag + ".distribution_orthogonal", tag + ".distributions",
            std::max(max_of(col(&PointStats::orth)), max_of(col(&PointStats::selfadj))), Tier::exact, pair);
    r.below("vaisman." + tag + ".distribution_structure_invariant", tag + ".distributions",
            max_of(col(&PointStats::invariant)), Tier::exact, pair);
    r.below("vaisman." + tag + ".lee_fields_orthogonal", tag + ".lee_type_fields", max_of(col(&PointStats::lee_fields)),
            r.fixed(1e-8), "relative to |theta#|^2");
  }

  r.info("vaisman.weyl.constant", "lck.weyl_connection", c_fit, "fitted at the first sample");
  r.below("vaisman.weyl.constant_integral", "lck.weyl_connection", std::abs(c_fit - c), Tier::first);
  {
    VaismanStructure off = lck;
    off.lee_enabled = false;
    const WeylConnection w{off, {}};
    const Connection lc = levi_civita(off.metric());
    double worst = 0.0;
    for (int i = 0; i < std::min(npts, 20); ++i) {
      const Vec& x = pts[static_cast<std::size_t>(i)];
      const Christoffel a = w.christoffel_at(x), b = lc(x);
      for (std::size_t k = 0; k < a.d.size(); ++k) worst = std::max(worst, std::abs(a.d[k] - b.d[k]));
    }
    r.below("vaisman.weyl.reduces_to_levi_civita", "weyl.levi_civita_limit", worst, Tier::exact);
    const VaismanStructure flat = VaismanStructure::flat();
    double dw = 0.0;
    for (int i = 0; i < std::min(npts, 20); ++i)
      dw = std::max(dw, lee_identity_check(flat, Point(flat.chart, pts[static_cast<std::size_t>(i)])).d_omega);
    r.below("vaisman.flat.kahler", "weyl.levi_civita_limit", dw, Tier::first, "d omega with theta = 0, flat metric");
  }

  // numeric substrate checks on the LCK metric
  {
    const MetricField b = lck.metric();
    const Connection lc = levi_civita(b);
    double oracle = 0.0, metricity = 0.0, bianchi = 0.0, antisym = 0.0;
    for (int i = 0; i < std::min(npts, 20); ++i) {
      const Point p(lck.chart, pts[static_cast<std::size_t>(i)]);
      oracle = std::max(oracle, conformal_oracle_error(christoffel(b, p), p.x));
      metricity = std::max(metricity, metricity_residual(lc, b, p));
      if (i < 5) {
        const Riemann R = curvature(lc, p);
        bianchi = std::max(bianchi, bianchi_residual(R));
        for (int m = 0; m < 8; ++m)
          for (int a = 0; a < 8; ++a)
            for (int k = 0; k < 8; ++k)
              for (int l = 0; l < 8; ++l) antisym = std::max(antisym, std::abs(R(m, a, k, l) + R(m, a, l, k)));
      }
    }
    r.below("manifold.christoffel.conformal_oracle", "christoffel.conformal_metric", oracle, Tier::first);
    r.below("manifold.levi_civita.metricity", "levi_civita.metricity", metricity, Tier::first);
    r.below("manifold.curvature.bianchi", "curvature.first_bianchi", bianchi, Tier::first);
    r.below("manifold.curvature.antisymmetry", "curvature.first_bianchi", antisym, r.fixed(1e-8));

    const Point p0(lck.chart, pts.front());
    DiffOptions coarse{2e-3, false}, fine{1e-3, false};
    const double e1 = conformal_oracle_error(christoffel_at(b, p0.x, coarse), p0.x);
    const double e2 = conformal_oracle_error(christoffel_at(b, p0.x, fine), p0.x);
    r.above("manifold.christoffel.second_order", "christoffel.convergence", e1 / e2, 3.0, "error ratio on halving the step");

    // small loops: (H - 1) / eps^2 against -R(e1, e2)
    const double eps = 1e-3;
    const Vec e1v = Vec::Unit(8, 0), e2v = Vec::Unit(8, 1);
    const Mat H = loop_holonomy(lc, square_loop(p0.x, e1v, e2v, eps), 8, 8);
    const Mat Rend = curvature(lc, p0).endomorphism(0, 1);
    const double rel = ((H - Mat::Identity(8, 8)) / (eps * eps) + Rend).norm() / Rend.norm();
    r.below("manifold.holonomy.curvature_limit", "holonomy.curvature", rel, r.fixed(1e-2), "relative, eps = 1e-3");
    auto loop = square_loop(p0.x, e1v, e2v, 0.2);
    auto back = loop;
    std::reverse(back.begin(), back.end());
    const Mat HH = loop_holonomy(lc, back, 8) * loop_holonomy(lc, loop, 8);
    r.below("manifold.holonomy.inverse_path", "holonomy.inverse", (HH - Mat::Identity(8, 8)).cwiseAbs().maxCoeff(),
            Tier::exact);
  }

  // holonomy block structure
  {
    const int nl = cfg.samples.holonomy_loops;
    const double side = cfg.samples.holonomy_side;
    const auto loops_lck = sample_loops(lck, rng, nl, side);
    const auto loops_lchk = sample_loops(lchk, rng, nl, side);
    const auto tv = holonomy_block_check(w_lck, DistributionName::T, DistributionName::V, loops_lck);
    r.below("vaisman.holonomy.lck_blocks", "lck.holonomy_reduction", tv.off_block, Tier::second,
            std::to_string(tv.loops) + " loops, T/V");
    const auto ds = holonomy_block_check(w_lchk, DistributionName::D, DistributionName::S, loops_lchk);
    r.below("vaisman.holonomy.lchk_blocks", "lchk.holonomy_reduction", ds.off_block, Tier::second,
            std::to_string(ds.loops) + " loops, D/S");
    r.below("vaisman.holonomy.lchk_trivial_on_S", "lchk.holonomy_reduction", ds.identity_defect, Tier::second);
    const VaismanStructure flat = VaismanStructure::flat();
    double flat_dev = 0.0;
    for (const auto& l : loops_lck)
      flat_dev = std::max(flat_dev, (loop_holonomy(flat_connection(8), l, 8) - Mat::Identity(8, 8)).cwiseAbs().maxCoeff());
    r.below("vaisman.holonomy.flat_identity", "holonomy.flat", flat_dev, r.fixed(1e-8));
  }
}

}  // namespace hopf::cli
