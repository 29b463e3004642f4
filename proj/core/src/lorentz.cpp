#include "hopfmod/lorentz.hpp"

#include <cmath>
#include <stdexcept>

namespace hopf {

namespace {

constexpr std::array<double, 4> kEta = {1.0, -1.0, -1.0, -1.0};

const std::array<std::array<Eigen::Matrix4cd, 4>, 4>& lowered_gamma_products() {
  static const auto table = [] {
    std::array<std::array<Eigen::Matrix4cd, 4>, 4> t;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t[a][b] = kEta[a] * kEta[b] * gamma(a).m * gamma(b).m;
    return t;
  }();
  return table;
}

// Fourth-order central stencil; the frame is smooth, so a wide step keeps round-off down.
Eigen::Matrix4d frame_derivative(const Tetrad& t, const Vec& x, const Vec& dir, double h) {
  return (8.0 * (t.frame(x + h * dir) - t.frame(x - h * dir)) - (t.frame(x + 2 * h * dir) - t.frame(x - 2 * h * dir))) /
         (12.0 * h);
}

Eigen::Matrix<cplx, 4, 2> block_basis(Chirality ch) {
  Eigen::Matrix<cplx, 4, 2> B = Eigen::Matrix<cplx, 4, 2>::Zero();
  const int off = ch == Chirality::R ? 0 : 2;
  B(off, 0) = 1.0;
  B(off + 1, 1) = 1.0;
  return B;
}

Eigen::Matrix4cd omega_axis(const Tetrad& t, const Vec& x, int axis) {
  return spinor_generator(spin_connection_along(t, x, Vec::Unit(4, axis)));
}

// RK4 transport of psi along coordinate axis by `length` in n equal steps; x is advanced.
Eigen::Vector4cd advance(const Tetrad& t, const Eigen::Vector4cd& psi0, Vec& x, int axis, double length, int n) {
  Eigen::Vector4cd psi = psi0;
  const double dt = length / n;
  Eigen::Matrix4cd start = omega_axis(t, x, axis);
  for (int s = 0; s < n; ++s) {
    Vec mid = x, end = x;
    mid[axis] += 0.5 * dt;
    end[axis] += dt;
    const Eigen::Matrix4cd om = omega_axis(t, mid, axis);
    const Eigen::Matrix4cd oe = omega_axis(t, end, axis);
    const Eigen::Vector4cd k1 = -start * psi;
    const Eigen::Vector4cd k2 = -om * (psi + 0.5 * dt * k1);
    const Eigen::Vector4cd k3 = -om * (psi + 0.5 * dt * k2);
    const Eigen::Vector4cd k4 = -oe * (psi + dt * k3);
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    x = end;
    start = oe;
  }
  if (!psi.allFinite()) throw std::runtime_error("spinor integration failed");
  return psi;
}

struct Sweep {
  const Tetrad& t;
  Vec lo;
  std::array<double, 4> delta{};
  int N = 0;
  int sub = 0;
  double h = 0.0;
  std::vector<Eigen::Vector4cd> nodes;
  std::array<std::array<std::vector<Eigen::Vector4cd>, 2>, 4> fd;

  void fill(int level, Vec x, Eigen::Vector4cd psi, long prefix, int fd_axis, int fd_sign) {
    if (level == 4) {
      if (fd_axis < 0) nodes[static_cast<std::size_t>(prefix)] = psi;
      else fd[fd_axis][fd_sign][static_cast<std::size_t>(prefix)] = psi;
      return;
    }
    for (int i = 0; i < N; ++i) {
      if (i > 0) {
        psi = advance(t, psi, x, level, delta[level], sub);
        x[level] = lo[level] + i * delta[level];
      }
      const long id = prefix * N + i;
      fill(level + 1, x, psi, id, fd_axis, fd_sign);
      if (fd_axis < 0) {
        for (int s = 0; s < 2; ++s) {
          Vec xs = x;
          const Eigen::Vector4cd ps = advance(t, psi, xs, level, s == 0 ? h : -h, 1);
          fill(level + 1, xs, ps, id, level, s);
        }
      }
    }
  }
};

Vec frame_image(const SwannSection& sec, const Vec& x, const Vec& dir, double h) {
  return (sec.eval(x + h * dir) - sec.eval(x - h * dir)) / (2.0 * h);
}

}  // namespace

Profile Profile::from_name(const std::string& name, double amplitude, double center, double width) {
  if (name == "zero" || name == "minkowski") return zero();
  if (name == "constant") return constant(amplitude);
  if (name == "gaussian") return gaussian(amplitude, center, width);
  throw std::invalid_argument("unknown pp-wave profile: " + name);
}

double Profile::operator()(double u) const {
  switch (kind) {
    case Kind::zero: return 0.0;
    case Kind::constant: return amplitude;
    case Kind::gaussian: {
      const double s = (u - center) / width;
      return amplitude * std::exp(-0.5 * s * s);
    }
  }
  return 0.0;
}

std::string Profile::name() const {
  switch (kind) {
    case Kind::zero: return "zero";
    case Kind::constant: return "constant";
    case Kind::gaussian: return "gaussian";
  }
  return "?";
}

Eigen::Matrix4d PPWaveMetric::at(const Vec& x) const {
  const double H = a(x[0]) * (x[2] * x[2] + x[3] * x[3]);
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = -H;
  g(0, 1) = g(1, 0) = 1.0;
  g(2, 2) = g(3, 3) = -1.0;
  return g;
}

MetricField PPWaveMetric::metric() const {
  MetricField g;
  g.dim = 4;
  g.positive = 1;
  g.negative = 3;
  const PPWaveMetric self = *this;
  g.eval = [self](const Vec& x) -> Mat { return self.at(x); };
  return g;
}

Eigen::Matrix4d lorentz_gram_schmidt(const Eigen::Matrix4d& g, const Eigen::Matrix4d& seeds) {
  Eigen::Matrix4d E;
  for (int i = 0; i < 4; ++i) {
    Eigen::Vector4d v = seeds.col(i);
    for (int j = 0; j < i; ++j) v -= (E.col(j).dot(g * v) / kEta[j]) * E.col(j);
    const double n = v.dot(g * v);
    if (n * kEta[i] <= 1e-14) throw std::domain_error("Gram-Schmidt seed has the wrong causal character");
    E.col(i) = v / std::sqrt(std::abs(n));
  }
  return E;
}

Eigen::Matrix4d Tetrad::frame(const Vec& x) const {
  const double H = m.a(x[0]) * (x[2] * x[2] + x[3] * x[3]);
  const Eigen::Vector4d l(0, 1, 0, 0), n(1, 0.5 * H, 0, 0);
  Eigen::Matrix4d seeds;
  seeds.col(0) = n + l;
  seeds.col(1) = Eigen::Vector4d::Unit(2);
  seeds.col(2) = Eigen::Vector4d::Unit(3);
  seeds.col(3) = n - l;
  return lorentz_gram_schmidt(m.at(x), seeds);
}

Tetrad null_adapted_tetrad(const PPWaveMetric& m) { return Tetrad{m}; }

double orthonormality_defect(const Tetrad& t, const Vec& x) {
  const Eigen::Matrix4d E = t.frame(x);
  const Eigen::Matrix4d G = E.transpose() * t.m.at(x) * E;
  return (G - Eigen::Matrix4d(Eigen::Vector4d(kEta[0], kEta[1], kEta[2], kEta[3]).asDiagonal())).cwiseAbs().maxCoeff();
}

Eigen::Matrix4d spin_connection_along(const Tetrad& t, const Vec& x, const Vec& dir) {
  const Eigen::Matrix4d E = t.frame(x);
  const Eigen::Matrix4d dE = frame_derivative(t, x, dir, 1e-3);
  const Mat A = christoffel_at(t.m.metric(), x, {1e-3, true}).contract(dir);
  const Eigen::Matrix4d mixed = E.inverse() * (dE + Eigen::Matrix4d(A) * E);  // omega^a_b
  return mixed * Eigen::Vector4d(kEta[0], kEta[1], kEta[2], kEta[3]).asDiagonal();
}

SpinConnection spin_connection(const PPWaveMetric& m, const Tetrad& t, const Point& p) {
  if (p.chart != nullptr && !p.chart->contains(p.x, 1e-5)) throw std::out_of_range("point too close to chart boundary");
  if (orthonormality_defect(Tetrad{m}, p.x) > 1e-10 || orthonormality_defect(t, p.x) > 1e-10)
    throw std::domain_error("tetrad is not orthonormal");
  SpinConnection sc;
  for (int mu = 0; mu < 4; ++mu) sc.w[mu] = spin_connection_along(t, p.x, Vec::Unit(4, mu));
  return sc;
}

Eigen::Matrix4cd spinor_generator(const Eigen::Matrix4d& omega_ab) {
  const auto& gg = lowered_gamma_products();
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (omega_ab(a, b) != 0.0) out += 0.25 * omega_ab(a, b) * gg[a][b];
  return out;
}

ParallelSpinorSolution solve_parallel_spinor(const PPWaveMetric& m, const Chart& region, Chirality chirality,
                                             const DiracSpinor& seed, const ParallelSpinorOptions& opt) {
  if (region.kind != Chart::Kind::box || region.dim != 4) throw std::invalid_argument("region must be a 4d box");
  if (opt.nodes_per_axis < 2 || opt.substeps < 1) throw std::invalid_argument("grid too coarse");
  const Tetrad t{m};
  const Vec lo = region.lo, hi = region.hi;

  // Integrability: a parallel spinor lies in the kernel of the spinor curvature.
  const Eigen::Matrix<cplx, 4, 2> B = block_basis(chirality);
  std::vector<Eigen::Matrix<cplx, 4, 2>> rows;
  const double hc = 1e-3;
  for (int iu = 0; iu < 5; ++iu)
    for (int iq = 0; iq < 3; ++iq) {
      Vec x = lo + 0.5 * (hi - lo);
      x[0] = lo[0] + (0.05 + 0.225 * iu) * (hi[0] - lo[0]);
      x[2] = lo[2] + (0.2 + 0.3 * iq) * (hi[2] - lo[2]);
      x[3] = lo[3] + (0.8 - 0.3 * iq) * (hi[3] - lo[3]);
      std::array<Eigen::Matrix4cd, 4> om;
      std::array<std::array<Eigen::Matrix4cd, 4>, 4> dom;  // dom[mu][nu] = d_mu Omega_nu
      for (int nu = 0; nu < 4; ++nu) om[nu] = omega_axis(t, x, nu);
      for (int mu = 0; mu < 4; ++mu) {
        const Vec e = hc * Vec::Unit(4, mu);
        for (int nu = 0; nu < 4; ++nu)
          dom[mu][nu] = (8.0 * (omega_axis(t, x + e, nu) - omega_axis(t, x - e, nu)) -
                         (omega_axis(t, x + 2 * e, nu) - omega_axis(t, x - 2 * e, nu))) /
                        (12 * hc);
      }
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
          rows.push_back((dom[mu][nu] - dom[nu][mu] + om[mu] * om[nu] - om[nu] * om[mu]) * B);
    }
  Eigen::MatrixXcd M(4 * static_cast<Eigen::Index>(rows.size()), 2);
  for (std::size_t i = 0; i < rows.size(); ++i) M.block<4, 2>(4 * static_cast<Eigen::Index>(i), 0) = rows[i];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  const Eigen::Vector2d sv = svd.singularValues();
  Eigen::Vector2cd c = B.adjoint() * seed.c;
  if (c.norm() == 0.0) throw std::invalid_argument("seed has no component of the requested chirality");
  ParallelSpinorSolution sol;
  if (sv[0] < 1e-9) {
    sol.kernel_dimension = 2;
  } else if (sv[1] <= 1e-6 * sv[0]) {
    sol.kernel_dimension = 1;
    const Eigen::Vector2cd k = svd.matrixV().col(1);
    c = k * k.dot(c);
    // a seed orthogonal to the kernel only fixes the chirality; fall back to the kernel vector
    if (c.norm() < 1e-12 * seed.c.norm()) c = k;
  } else {
    throw std::runtime_error("no parallel spinor found");
  }
  sol.seed = DiracSpinor(B * c);

  Sweep sw{t, lo, {}, opt.nodes_per_axis, opt.substeps, opt.fd_step, {}, {}};
  for (int a = 0; a < 4; ++a) sw.delta[a] = (hi[a] - lo[a]) / (opt.nodes_per_axis - 1);
  const long total = static_cast<long>(std::pow(opt.nodes_per_axis, 4));
  sw.nodes.resize(static_cast<std::size_t>(total));
  for (auto& axis : sw.fd)
    for (auto& v : axis) v.resize(static_cast<std::size_t>(total));
  sw.fill(0, lo, sol.seed.c, 0, -1, 0);

  double res = 0.0;
  const int N = opt.nodes_per_axis;
  for (long id = 0; id < total; ++id) {
    Vec x(4);
    long r = id;
    for (int a = 3; a >= 0; --a) {
      x[a] = lo[a] + static_cast<double>(r % N) * sw.delta[a];
      r /= N;
    }
    const Eigen::Vector4cd& psi = sw.nodes[static_cast<std::size_t>(id)];
    for (int a = 0; a < 4; ++a) {
      const Eigen::Vector4cd d = (sw.fd[a][0][static_cast<std::size_t>(id)] - sw.fd[a][1][static_cast<std::size_t>(id)]) /
                                 (2.0 * opt.fd_step);
      res = std::max(res, (d + omega_axis(t, x, a) * psi).cwiseAbs().maxCoeff());
    }
  }
  sol.residual = res;
  sol.grid_points = total;
  if (res > opt.accept) throw std::runtime_error("no parallel spinor found");

  const std::array<double, 4> step = {sw.delta[0] / opt.substeps, sw.delta[1] / opt.substeps,
                                      sw.delta[2] / opt.substeps, sw.delta[3] / opt.substeps};
  const Eigen::Vector4cd psi0 = sol.seed.c;
  sol.field.tag = chirality == Chirality::L ? SpinorField::Tag::L : SpinorField::Tag::R;
  sol.field.eval = [t, lo, step, psi0](const Vec& p) {
    Vec x = lo;
    Eigen::Vector4cd psi = psi0;
    for (int a = 0; a < 4; ++a) {
      const double len = p[a] - lo[a];
      if (len == 0.0) continue;
      const int n = std::max(1, static_cast<int>(std::ceil(std::abs(len) / step[a] - 1e-9)));
      psi = advance(t, psi, x, a, len, n);
      x[a] = p[a];
    }
    return DiracSpinor(psi);
  };
  return sol;
}

double spinor_residual_at(const Tetrad& t, const SpinorField& psi, const Vec& x, double step) {
  const Eigen::Matrix4d E = t.frame(x);
  const Eigen::Vector4cd p0 = psi.eval(x).c;
  double m = 0.0;
  for (int a = 0; a < 4; ++a) {
    const Vec dir = E.col(a);
    const Eigen::Vector4cd d = (psi.eval(x + step * dir).c - psi.eval(x - step * dir).c) / (2.0 * step);
    m = std::max(m, (d + spinor_generator(spin_connection_along(t, x, dir)) * p0).cwiseAbs().maxCoeff());
  }
  return m;
}

Eigen::Vector4d dirac_current_frame(const DiracSpinor& psi) {
  if (psi.c.norm() == 0.0) throw std::domain_error("zero spinor");
  Eigen::Vector4d n;
  for (int a = 0; a < 4; ++a) n[a] = dirac_pairing(psi, gamma(a).m * psi.c).real();
  return n;
}

Vec dirac_current(const SpinorField& psi, const Tetrad& t, const Point& p) {
  return t.frame(p.x) * dirac_current_frame(psi.eval(p.x));
}

Vec ClassAction::apply(const Vec& cover) const {
  const Quaternion q1(Eigen::Vector4d(cover.head<4>())), q2(Eigen::Vector4d(cover.tail<4>()));
  Vec out(8);
  out.head<4>() = scale * (q1 * g).vec();
  out.tail<4>() = scale * (q2 * g).vec();
  return out;
}

SwannSection build_section(const SpinorField& psi, const ClassAction& gamma) {
  if (psi.tag == SpinorField::Tag::mixed) throw std::invalid_argument("section needs a chiral spinor field");
  const Chirality ch = psi.tag == SpinorField::Tag::L ? Chirality::L : Chirality::R;
  SwannSection sec;
  sec.gamma = gamma;
  sec.eval = [psi, ch, gamma](const Vec& x) {
    const Eigen::Vector2cd w = psi.eval(x).part(ch);
    const Quaternion s = from_c2(w[0], w[1]);
    if (s.norm2() == 0.0) throw std::domain_error("spinor vanishes on the region");
    const Quaternion base(Eigen::Vector4d(x.head<4>()));
    Vec cover(8);
    cover.head<4>() = (base * s).vec();
    cover.tail<4>() = s.vec();
    return gamma.apply(cover);
  };
  return sec;
}

SwannSection compose(const SwannSection& sec, const ClassAction& gamma) {
  SwannSection out;
  out.gamma = {sec.gamma.scale * gamma.scale, sec.gamma.g * gamma.g};
  const auto inner = sec.eval;
  out.eval = [inner, gamma](const Vec& x) { return gamma.apply(inner(x)); };
  return out;
}

Mat section_jacobian(const SwannSection& sec, const Vec& x, double step) {
  Mat J(8, x.size());
  for (int mu = 0; mu < x.size(); ++mu) J.col(mu) = frame_image(sec, x, Vec::Unit(x.size(), mu), step);
  return J;
}

TensionReport tension_field(const SwannSection& sec, const Connection& target, const MetricField& base,
                            const Connection& base_conn, const Point& p, double step) {
  const Vec& x = p.x;
  const int n = static_cast<int>(x.size());
  if (p.chart != nullptr && !p.chart->contains(x, 2 * step)) throw std::out_of_range("step too large near boundary");
  const Mat ginv = base.eval(x).inverse();
  const Mat J = section_jacobian(sec, x, 1e-5);
  const Vec F0 = sec.eval(x);
  const Christoffel Gt = target(F0);
  const Christoffel Gb = base_conn(x);
  Vec tau = Vec::Zero(8);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      if (ginv(mu, nu) == 0.0) continue;
      const Vec em = step * Vec::Unit(n, mu), en = step * Vec::Unit(n, nu);
      Vec hess;
      if (mu == nu) hess = (sec.eval(x + em) - 2.0 * F0 + sec.eval(x - em)) / (step * step);
      else
        hess = (sec.eval(x + em + en) - sec.eval(x + em - en) - sec.eval(x - em + en) + sec.eval(x - em - en)) /
               (4.0 * step * step);
      Vec term = hess + Gt.contract(J.col(mu)) * J.col(nu);
      for (int la = 0; la < n; ++la) term -= Gb(la, mu, nu) * J.col(la);
      tau += ginv(mu, nu) * term;
    }
  return {tau, tau.norm()};
}

TensionReport tension_field(const SwannSection& sec, const VaismanStructure& vs, const PPWaveMetric& m, const Point& p,
                            double step) {
  const WeylConnection wc{vs, {}};
  const MetricField g = m.metric();
  return tension_field(sec, wc.connection(), g, levi_civita(g), p, step);
}

double holomorphy_residual(const SwannSection& sec, const VaismanStructure& vs, const Point& p, double step) {
  const Mat J = section_jacobian(sec, p.x, step);
  const Mat O = structure_matrix({Side::negative, {1, 0, 0}});
  return (vs.complex_structure(0) * J - J * O).cwiseAbs().maxCoeff();
}

LcCancellation lc_cancellation(const SwannSection& sec, const FrameField& frame, const MetricField& g, const Point& p) {
  const Vec& x = p.x;
  const Eigen::Matrix4d E = frame(x);
  const Christoffel Gb = christoffel_at(g, x);
  const double h = 1e-3, h1 = 1e-5;
  // V = sum_a eta_aa nabla^LC_{e_a} e_a
  Vec V = Vec::Zero(4);
  for (int a = 0; a < 4; ++a) {
    const Vec ea = E.col(a);
    const Vec dea = (8.0 * (frame(x + h * ea) - frame(x - h * ea)) - (frame(x + 2 * h * ea) - frame(x - 2 * h * ea))).col(a) /
                    (12.0 * h);
    V += kEta[a] * (dea + Gb.contract(ea) * ea);
  }
  const Eigen::Vector4d Vframe = E.inverse() * Eigen::Vector4d(V);
  Vec jordan_route = Vec::Zero(8);
  for (int b = 0; b < 4; ++b) jordan_route += Vframe[b] * frame_image(sec, x, E.col(b), h1);
  const Vec tension_route = frame_image(sec, x, V, h1);
  return {jordan_route.norm(), tension_route.norm(), (jordan_route - tension_route).norm(), V.norm()};
}

DiracResidualReport dirac_residual(const SwannSection& sec, const SpinorField& psi, const VaismanStructure& vs,
                                   const PPWaveMetric& m, const Point& p, double step) {
  const Vec& x = p.x;
  const Tetrad t{m};
  const Eigen::Matrix4d E = t.frame(x);
  const WeylConnection wc{vs, {}};
  const Christoffel Gb = christoffel_at(m.metric(), x);
  const double h1 = 1e-5;

  const auto X0 = [&](const Vec& y) -> Vec { return frame_image(sec, y, t.frame(y).col(0), h1); };
  const Eigen::Vector4cd ps = psi.eval(x).c;
  const Eigen::Vector4cd pst = gamma(0).m * ps;
  const Vec X0x = X0(x);
  const Christoffel Gt = wc.christoffel_at(sec.eval(x));

  DiracResidualReport rep;
  rep.residual = Eigen::MatrixXcd::Zero(8, 4);
  for (int a = 0; a < 4; ++a) {
    const Vec ea = E.col(a);
    const Vec dX0 = (X0(x + step * ea) - X0(x - step * ea)) / (2.0 * step);
    const Vec wX0 = dX0 + Gt.contract(frame_image(sec, x, ea, h1)) * X0x;  // nabla^w_{e_a} X^0
    const Eigen::Vector4cd dps = (psi.eval(x + h1 * ea).c - psi.eval(x - h1 * ea).c) / (2.0 * h1);
    const Eigen::Vector4cd sps =
        gamma(0).m * (dps + spinor_generator(spin_connection_along(t, x, ea)) * ps);  // lifted to psi~
    const Eigen::MatrixXcd Ma = wX0.cast<cplx>() * pst.transpose() + X0x.cast<cplx>() * sps.transpose();
    rep.residual += Ma * jordan_to_clifford(a).m.transpose();
  }
  rep.norm = rep.residual.norm();

  const LcCancellation lc = lc_cancellation(sec, [t](const Vec& y) { return t.frame(y); }, m.metric(), p);
  rep.lc_dirac_route = lc.dirac_route * ps.norm();
  rep.lc_tension_route = lc.tension_route * ps.norm();
  rep.cancellation = lc.difference * ps.norm();

  const MetricField g = m.metric();
  rep.tension_spinor = tension_field(sec, wc.connection(), g, levi_civita(g), p, step).norm * ps.norm();
  return rep;
}

}  // namespace hopf
