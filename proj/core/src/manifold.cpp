#include "hopfmod/manifold.hpp"

#include <cmath>
#include <stdexcept>

namespace hopf {

Vec Rng::uniform_vec(int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

Vec Rng::unit_vec(int n) {
  for (;;) {
    Vec v = uniform_vec(n, -1.0, 1.0);
    const double r = v.norm();
    if (r > 1e-3 && r <= 1.0) return v / r;
  }
}

Chart Chart::box(const Vec& lo, const Vec& hi, std::vector<std::string> labels) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box bounds differ in length");
  Chart c;
  c.dim = static_cast<int>(lo.size());
  c.kind = Kind::box;
  c.lo = lo;
  c.hi = hi;
  c.labels = std::move(labels);
  return c;
}

Chart Chart::punctured(int dim, double inner, double outer, std::vector<std::string> labels) {
  Chart c;
  c.dim = dim;
  c.kind = Kind::punctured;
  c.inner_radius = inner;
  c.outer_radius = outer;
  c.labels = std::move(labels);
  return c;
}

bool Chart::contains(const Vec& x, double margin) const {
  if (x.size() != dim) return false;
  if (kind == Kind::box) {
    for (int i = 0; i < dim; ++i)
      if (x[i] < lo[i] + margin || x[i] > hi[i] - margin) return false;
    return true;
  }
  const double r = x.norm();
  return r >= inner_radius + margin && r <= outer_radius - margin;
}

Vec Chart::sample(Rng& rng) const {
  if (kind == Kind::box) {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    return x;
  }
  return sample_shell(rng, inner_radius, outer_radius);
}

Vec Chart::sample_shell(Rng& rng, double r_lo, double r_hi) const {
  if (kind != Kind::punctured) throw std::logic_error("shell sampling needs a punctured chart");
  const double r = rng.uniform(std::max(r_lo, inner_radius), std::min(r_hi, outer_radius));
  return r * rng.unit_vec(dim);
}

Point::Point(const Chart& c, Vec coords) : chart(&c), x(std::move(coords)) {
  if (x.size() != c.dim) throw std::invalid_argument("point dimension does not match chart");
}

int TensorField::size() const {
  int s = 1;
  for (int i = 0; i < contra + cov; ++i) s *= dim;
  return s;
}

void MetricField::validate(const Vec& x, double sym_tol, double det_tol) const {
  const Mat g = eval(x);
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > sym_tol) throw std::domain_error("metric not symmetric");
  // scale-free: |det g| / max|g_ij|^n, so conformal factors do not trip it
  const double scale = g.cwiseAbs().maxCoeff();
  if (scale == 0.0 || std::abs(g.determinant()) / std::pow(scale, g.rows()) <= det_tol)
    throw std::domain_error("singular metric");
}

Mat Christoffel::contract(const Vec& v) const {
  Mat A = Mat::Zero(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      if (v[nu] == 0.0) continue;
      for (int ka = 0; ka < n; ++ka) A(mu, ka) += (*this)(mu, nu, ka) * v[nu];
    }
  return A;
}

double Christoffel::max_abs() const {
  double m = 0.0;
  for (double v : d) m = std::max(m, std::abs(v));
  return m;
}

Mat Riemann::endomorphism(int ka, int la) const {
  Mat E(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) E(mu, nu) = (*this)(mu, nu, ka, la);
  return E;
}

namespace {

std::vector<Mat> partials_plain(const MetricField& g, const Vec& x, double h) {
  std::vector<Mat> dg(static_cast<std::size_t>(g.dim));
  Vec xp = x, xm = x;
  for (int k = 0; k < g.dim; ++k) {
    xp[k] = x[k] + h;
    xm[k] = x[k] - h;
    dg[k] = (g.eval(xp) - g.eval(xm)) / (2.0 * h);
    xp[k] = xm[k] = x[k];
  }
  return dg;
}

Christoffel assemble(const Mat& ginv, const std::vector<Mat>& dg) {
  const int n = static_cast<int>(ginv.rows());
  Christoffel G(n);
  // lowered: Gamma_{l nu ka} = (d_nu g_{l ka} + d_ka g_{l nu} - d_l g_{nu ka}) / 2
  std::vector<double> low(static_cast<std::size_t>(n * n * n));
  for (int l = 0; l < n; ++l)
    for (int nu = 0; nu < n; ++nu)
      for (int ka = nu; ka < n; ++ka) {
        const double v = 0.5 * (dg[nu](l, ka) + dg[ka](l, nu) - dg[l](nu, ka));
        low[(l * n + nu) * n + ka] = v;
        low[(l * n + ka) * n + nu] = v;
      }
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int ka = nu; ka < n; ++ka) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += ginv(mu, l) * low[(l * n + nu) * n + ka];
        G(mu, nu, ka) = acc;
        G(mu, ka, nu) = acc;
      }
  return G;
}

}  // namespace

std::vector<Mat> metric_partials(const MetricField& g, const Vec& x, const DiffOptions& opt) {
  if (!opt.richardson) return partials_plain(g, x, opt.step);
  auto coarse = partials_plain(g, x, opt.step);
  auto fine = partials_plain(g, x, 0.5 * opt.step);
  for (std::size_t k = 0; k < fine.size(); ++k) fine[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
  return fine;
}

Christoffel christoffel_at(const MetricField& g, const Vec& x, const DiffOptions& opt) {
  const Mat gx = g.eval(x);
  Eigen::FullPivLU<Mat> lu(gx);
  if (!lu.isInvertible() || lu.rcond() <= 1e-12) throw std::domain_error("singular metric");
  return assemble(lu.inverse(), metric_partials(g, x, opt));
}

Christoffel christoffel(const MetricField& g, const Point& p, double step, bool richardson) {
  if (p.chart != nullptr && !p.chart->contains(p.x, step))
    throw std::out_of_range("point too close to chart boundary");
  return christoffel_at(g, p.x, {step, richardson});
}

Connection levi_civita(const MetricField& g, DiffOptions opt) {
  return [g, opt](const Vec& x) { return christoffel_at(g, x, opt); };
}

Connection flat_connection(int dim) {
  return [dim](const Vec&) { return Christoffel(dim); };
}

Vec covariant_derivative(const Connection& conn, const TensorField& field, const Vec& direction,
                         const Point& p, double step) {
  if (p.chart != nullptr && !p.chart->contains(p.x, step * direction.norm()))
    throw std::out_of_range("point too close to chart boundary");
  const int n = field.dim;
  const int rank = field.contra + field.cov;
  const Vec& x = p.x;
  Vec out = (field.eval(x + step * direction) - field.eval(x - step * direction)) / (2.0 * step);
  if (rank == 0) return out;

  const Vec T = field.eval(x);
  const Mat A = conn(x).contract(direction);  // A(mu, ka) = Gamma^mu_{nu ka} X^nu
  std::vector<int> stride(static_cast<std::size_t>(rank));
  for (int s = rank - 1, w = 1; s >= 0; --s, w *= n) stride[s] = w;

  for (int idx = 0; idx < field.size(); ++idx) {
    double acc = 0.0;
    for (int s = 0; s < rank; ++s) {
      const int digit = (idx / stride[s]) % n;
      const int base = idx - digit * stride[s];
      for (int c = 0; c < n; ++c) {
        const double t = T[base + c * stride[s]];
        acc += s < field.contra ? A(digit, c) * t : -A(c, digit) * t;
      }
    }
    out[idx] += acc;
  }
  return out;
}

Mat transport_segment(const Connection& conn, const Vec& a, const Vec& b, int steps) {
  const int n = static_cast<int>(a.size());
  const Vec v = b - a;
  const double dt = 1.0 / steps;
  Mat V = Mat::Identity(n, n);
  auto rhs = [&](double t, const Mat& M) -> Mat { return -conn(a + t * v).contract(v) * M; };
  for (int s = 0; s < steps; ++s) {
    const double t = s * dt;
    const Mat k1 = rhs(t, V);
    const Mat k2 = rhs(t + 0.5 * dt, V + 0.5 * dt * k1);
    const Mat k3 = rhs(t + 0.5 * dt, V + 0.5 * dt * k2);
    const Mat k4 = rhs(t + dt, V + dt * k3);
    V += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!V.allFinite()) throw std::runtime_error("parallel transport integration failed");
  }
  return V;
}

Mat loop_holonomy(const Connection& conn, const std::vector<Vec>& loop, int fiber_dim, int steps_per_segment) {
  if (loop.size() < 3) throw std::invalid_argument("loop needs at least three vertices");
  if ((loop.front() - loop.back()).norm() > 1e-12) throw std::invalid_argument("loop not closed");
  const int n = static_cast<int>(loop.front().size());
  if (fiber_dim != n) throw std::invalid_argument("fiber dimension must equal chart dimension");
  if (steps_per_segment < 1) throw std::invalid_argument("step underflow");
  Mat H = Mat::Identity(n, n);
  for (std::size_t i = 0; i + 1 < loop.size(); ++i)
    H = transport_segment(conn, loop[i], loop[i + 1], steps_per_segment) * H;
  return H;
}

std::vector<Vec> square_loop(const Vec& base, const Vec& e1, const Vec& e2, double side) {
  return {base, base + side * e1, base + side * (e1 + e2), base + side * e2, base};
}

Riemann curvature(const Connection& conn, const Point& p, double step) {
  if (p.chart != nullptr && !p.chart->contains(p.x, step)) throw std::out_of_range("point too close to chart boundary");
  const Vec& x = p.x;
  const int n = static_cast<int>(x.size());
  const Christoffel G = conn(x);
  std::vector<Christoffel> dG;  // dG[k] = d_k Gamma
  dG.reserve(static_cast<std::size_t>(n));
  Vec xp = x, xm = x;
  for (int k = 0; k < n; ++k) {
    xp[k] = x[k] + step;
    xm[k] = x[k] - step;
    const Christoffel a = conn(xp), b = conn(xm);
    Christoffel d(n);
    for (std::size_t i = 0; i < d.d.size(); ++i) d.d[i] = (a.d[i] - b.d[i]) / (2.0 * step);
    dG.push_back(std::move(d));
    xp[k] = xm[k] = x[k];
  }
  Riemann R(n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int ka = 0; ka < n; ++ka)
        for (int la = ka + 1; la < n; ++la) {
          double v = dG[ka](mu, la, nu) - dG[la](mu, ka, nu);
          for (int s = 0; s < n; ++s) v += G(mu, ka, s) * G(s, la, nu) - G(mu, la, s) * G(s, ka, nu);
          R(mu, nu, ka, la) = v;
          R(mu, nu, la, ka) = -v;
        }
  return R;
}

double bianchi_residual(const Riemann& R) {
  const int n = R.n;
  double m = 0.0;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int ka = 0; ka < n; ++ka)
        for (int la = 0; la < n; ++la)
          m = std::max(m, std::abs(R(mu, nu, ka, la) + R(mu, ka, la, nu) + R(mu, la, nu, ka)));
  return m;
}

double metricity_residual(const Connection& conn, const MetricField& g, const Point& p, double step) {
  const int n = g.dim;
  const Christoffel G = conn(p.x);
  const Mat gx = g.eval(p.x);
  const auto dg = metric_partials(g, p.x, {step, false});
  double m = 0.0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = dg[k](i, j);
        for (int l = 0; l < n; ++l) v -= G(l, k, i) * gx(l, j) + G(l, k, j) * gx(i, l);
        m = std::max(m, std::abs(v));
      }
  return m;
}

}  // namespace hopf
