#include "hopfmod/vaisman.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "hopfmod/algebra.hpp"

namespace hopf {

namespace {

constexpr int kDim = 8;

Mat left_mult_blocks(const Quaternion& u) {
  const Eigen::Matrix4d L = structure_matrix({Side::negative, {u.x, u.y, u.z}});
  Mat J = Mat::Zero(kDim, kDim);
  J.block<4, 4>(0, 0) = L;
  J.block<4, 4>(4, 4) = L;
  return J;
}

Mat metric_at(const VaismanStructure& vs, const Vec& x) {
  if (!vs.conformal) return Mat::Identity(kDim, kDim);
  const double r2 = x.squaredNorm();
  if (r2 == 0.0) throw std::domain_error("point at origin");
  return Mat::Identity(kDim, kDim) / r2;
}

// s d log|x|^2 with the resolved sign (or +1 before resolution); independent of lee_enabled.
Vec reference_form(const VaismanStructure& vs, const Vec& x) {
  const double s = vs.lee_sign == 0 ? 1.0 : static_cast<double>(vs.lee_sign);
  return s * 2.0 * x / x.squaredNorm();
}

// Components of d omega and omega ^ theta, indexed (i*n + j)*n + k.
void omega_forms(const VaismanStructure& vs, const Mat& J, const Vec& x, double step, std::vector<double>& domega,
                 std::vector<double>& wedge) {
  const MetricField g = vs.metric();
  const auto dg = metric_partials(g, x, {step, false});
  const Mat omega = J.transpose() * g.eval(x);  // omega(X,Y) = b(JX, Y)
  std::vector<Mat> domega_k;
  for (const Mat& d : dg) domega_k.push_back(J.transpose() * d);
  const Vec theta = lee_form_at(vs, x);
  const int n = kDim;
  domega.assign(static_cast<std::size_t>(n * n * n), 0.0);
  wedge.assign(domega.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const std::size_t id = static_cast<std::size_t>((i * n + j) * n + k);
        domega[id] = domega_k[i](j, k) + domega_k[j](k, i) + domega_k[k](i, j);
        wedge[id] = omega(i, j) * theta[k] + omega(j, k) * theta[i] + omega(k, i) * theta[j];
      }
}

}  // namespace

VaismanStructure VaismanStructure::lck(double lambda) {
  VaismanStructure vs;
  vs.flavor = Flavor::LCK;
  vs.lambda = lambda;
  vs.lee_sign = resolve_lee_sign(vs);
  return vs;
}

VaismanStructure VaismanStructure::lchk(double lambda) {
  VaismanStructure vs;
  vs.flavor = Flavor::LCHK;
  vs.lambda = lambda;
  vs.lee_sign = resolve_lee_sign(vs);
  return vs;
}

VaismanStructure VaismanStructure::flat() {
  VaismanStructure vs;
  vs.conformal = false;
  vs.lee_enabled = false;
  return vs;
}

MetricField VaismanStructure::metric() const {
  MetricField g;
  g.dim = kDim;
  g.positive = kDim;
  const VaismanStructure copy = *this;
  g.eval = [copy](const Vec& x) { return metric_at(copy, x); };
  return g;
}

Mat VaismanStructure::complex_structure(int which) const {
  if (which < 0 || which >= structure_count()) throw std::out_of_range("complex structure index");
  static const std::array<Quaternion, 3> units = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  return left_mult_blocks(units[static_cast<std::size_t>(which)]);
}

int resolve_lee_sign(const VaismanStructure& base) {
  static const std::array<std::array<double, 8>, 3> probes = {{
      {1.0, 0.3, -0.2, 0.5, 0.1, -0.4, 0.7, 0.2},
      {-0.6, 0.8, 0.4, -0.1, 0.9, 0.2, -0.3, 0.5},
      {0.2, -0.7, 1.1, 0.3, -0.5, 0.6, 0.1, -0.9},
  }};
  double best = 0.0;
  int sign = 0;
  for (int s : {+1, -1}) {
    VaismanStructure vs = base;
    vs.lee_sign = s;
    vs.lee_enabled = true;
    double worst = 0.0;
    for (const auto& pr : probes) {
      const Vec x = Eigen::Map<const Eigen::Matrix<double, 8, 1>>(pr.data());
      worst = std::max(worst, lee_identity_check(vs, Point(vs.chart, x)).residual);
    }
    if (sign == 0 || worst < best) {
      best = worst;
      sign = s;
    }
  }
  return sign;
}

Mat vaisman_metric(const VaismanStructure& vs, const Point& p) { return metric_at(vs, p.x); }

Vec lee_form_at(const VaismanStructure& vs, const Vec& x) {
  if (!vs.lee_enabled) return Vec::Zero(kDim);
  return reference_form(vs, x);
}

Vec lee_form(const VaismanStructure& vs, const Point& p) { return lee_form_at(vs, p.x); }

Vec lee_field(const VaismanStructure& vs, const Point& p) {
  return metric_at(vs, p.x).ldlt().solve(lee_form_at(vs, p.x));
}

Christoffel WeylConnection::christoffel_at(const Vec& x) const {
  const MetricField g = vs.metric();
  Christoffel G = hopf::christoffel_at(g, x, opt);
  const Vec theta = lee_form_at(vs, x);
  if (theta.isZero(0.0)) return G;
  const Mat b = g.eval(x);
  const Vec sharp = b.ldlt().solve(theta);
  for (int mu = 0; mu < kDim; ++mu)
    for (int nu = 0; nu < kDim; ++nu)
      for (int ka = 0; ka < kDim; ++ka) {
        double c = b(nu, ka) * sharp[mu];
        if (mu == ka) c -= theta[nu];
        if (mu == nu) c -= theta[ka];
        G(mu, nu, ka) += 0.5 * c;
      }
  return G;
}

Connection WeylConnection::connection() const {
  const WeylConnection self = *this;
  return [self](const Vec& x) { return self.christoffel_at(x); };
}

Vec weyl_derivative(const WeylConnection& wc, const VectorField& X, const VectorField& Y, const Point& p) {
  const MetricField g = wc.vs.metric();
  const Vec Xp = X(p.x), Yp = Y(p.x);
  TensorField field{kDim, 1, 0, Y};
  const Vec lc = covariant_derivative(levi_civita(g, wc.opt), field, Xp, p, wc.opt.step);
  const Vec theta = lee_form_at(wc.vs, p.x);
  const Mat b = g.eval(p.x);
  const Vec sharp = b.ldlt().solve(theta);
  return lc + 0.5 * (Xp.dot(b * Yp) * sharp - theta.dot(Xp) * Yp - theta.dot(Yp) * Xp);
}

double weyl_structure_defect(const WeylConnection& wc, const Mat& J, const VectorField& X, const VectorField& Y,
                             const Point& p) {
  const VectorField JY = [&](const Vec& x) -> Vec { return J * Y(x); };
  return (weyl_derivative(wc, X, JY, p) - J * weyl_derivative(wc, X, Y, p)).cwiseAbs().maxCoeff();
}

namespace {

// Q[k](i,j) = (nabla^w_k b)_{ij}
std::vector<Mat> weyl_metric_derivative(const WeylConnection& wc, const Point& p) {
  const MetricField g = wc.vs.metric();
  TensorField b{kDim, 0, 2, [g](const Vec& x) -> Vec {
                   const Mat m = g.eval(x);
                   return Eigen::Map<const Vec>(m.data(), kDim * kDim);
                 }};
  const Connection conn = wc.connection();
  std::vector<Mat> Q;
  for (int k = 0; k < kDim; ++k) {
    const Vec v = covariant_derivative(conn, b, Vec::Unit(kDim, k), p, wc.opt.step);
    Q.push_back(Eigen::Map<const Mat>(v.data(), kDim, kDim));
  }
  return Q;
}

}  // namespace

double weyl_metric_ratio(const WeylConnection& wc, const Point& p) {
  const auto Q = weyl_metric_derivative(wc, p);
  const Vec theta = lee_form_at(wc.vs, p.x);
  const Mat b = wc.vs.metric().eval(p.x);
  double num = 0.0, den = 0.0;
  for (int k = 0; k < kDim; ++k) {
    const Mat m = theta[k] * b;
    num += (Q[k].array() * m.array()).sum();
    den += m.squaredNorm();
  }
  if (den == 0.0) throw std::domain_error("Lee form vanishes; ratio undefined");
  return num / den;
}

double weyl_metricity_residual(const WeylConnection& wc, double c, const Point& p) {
  const auto Q = weyl_metric_derivative(wc, p);
  const Vec theta = lee_form_at(wc.vs, p.x);
  const Mat b = wc.vs.metric().eval(p.x);
  double m = 0.0;
  for (int k = 0; k < kDim; ++k) m = std::max(m, (Q[k] - c * theta[k] * b).cwiseAbs().maxCoeff());
  return m;
}

std::string_view to_string(DistributionName n) {
  switch (n) {
    case DistributionName::T: return "T";
    case DistributionName::V: return "V";
    case DistributionName::D: return "D";
    case DistributionName::S: return "S";
  }
  return "?";
}

std::vector<Vec> lee_type_fields(const VaismanStructure& vs, DistributionName span, const Vec& x) {
  const Mat b = metric_at(vs, x);
  const Vec sharp = b.ldlt().solve(reference_form(vs, x));
  std::vector<Vec> out{sharp};
  if (span == DistributionName::V || span == DistributionName::T) {
    out.push_back(vs.complex_structure(0) * sharp);
    return out;
  }
  if (vs.flavor != Flavor::LCHK) throw std::invalid_argument("D and S need the hypercomplex flavor");
  for (int a = 0; a < 3; ++a) out.push_back(vs.complex_structure(a) * sharp);
  return out;
}

Mat distribution_projector(const VaismanStructure& vs, DistributionName name, const Point& p) {
  const Mat b = metric_at(vs, p.x);
  const auto fields = lee_type_fields(vs, name, p.x);
  Mat V(kDim, static_cast<Eigen::Index>(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) V.col(static_cast<Eigen::Index>(i)) = fields[i];
  const Mat gram = V.transpose() * b * V;
  if (std::abs(gram.determinant()) < 1e-14 * std::pow(gram.norm(), static_cast<double>(gram.rows())))
    throw std::domain_error("degenerate span");
  const Mat P = V * gram.ldlt().solve(V.transpose() * b);
  const bool span = name == DistributionName::V || name == DistributionName::S;
  return span ? P : Mat(Mat::Identity(kDim, kDim) - P);
}

LeeIdentityReport lee_identity_check(const VaismanStructure& vs, const Point& p, double step) {
  LeeIdentityReport rep;
  for (int a = 0; a < vs.structure_count(); ++a) {
    std::vector<double> d, w;
    omega_forms(vs, vs.complex_structure(a), p.x, step, d, w);
    for (std::size_t i = 0; i < d.size(); ++i) {
      rep.residual = std::max(rep.residual, std::abs(d[i] - w[i]));
      rep.d_omega = std::max(rep.d_omega, std::abs(d[i]));
      rep.omega_wedge_theta = std::max(rep.omega_wedge_theta, std::abs(w[i]));
    }
  }
  return rep;
}

double lee_closedness(const VaismanStructure& vs, const Point& p, double step) {
  Mat dth(kDim, kDim);
  for (int i = 0; i < kDim; ++i) {
    const Vec e = step * Vec::Unit(kDim, i);
    dth.row(i) = (lee_form_at(vs, p.x + e) - lee_form_at(vs, p.x - e)).transpose() / (2.0 * step);
  }
  return (dth - dth.transpose()).cwiseAbs().maxCoeff();
}

double lee_parallelism(const VaismanStructure& vs, const Point& p, double step) {
  TensorField theta{kDim, 0, 1, [vs](const Vec& x) { return lee_form_at(vs, x); }};
  const Connection lc = levi_civita(vs.metric(), {step, false});
  double m = 0.0;
  for (int k = 0; k < kDim; ++k)
    m = std::max(m, covariant_derivative(lc, theta, Vec::Unit(kDim, k), p, step).cwiseAbs().maxCoeff());
  return m;
}

double restricted_kahler_residual(const VaismanStructure& vs, const Point& p, double step) {
  const Mat PT = distribution_projector(vs, DistributionName::T, p);
  // orthonormal (Euclidean) basis of the range of P_T
  Eigen::JacobiSVD<Mat> svd(PT, Eigen::ComputeFullU);
  const Mat basis = svd.matrixU().leftCols(6);
  double m = 0.0;
  for (int a = 0; a < vs.structure_count(); ++a) {
    std::vector<double> d, w;
    omega_forms(vs, vs.complex_structure(a), p.x, step, d, w);
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j)
        for (int k = j + 1; k < 6; ++k) {
          double acc = 0.0;
          for (int r = 0; r < kDim; ++r)
            for (int s = 0; s < kDim; ++s)
              for (int t = 0; t < kDim; ++t)
                acc += d[static_cast<std::size_t>((r * kDim + s) * kDim + t)] * basis(r, i) * basis(s, j) * basis(t, k);
          m = std::max(m, std::abs(acc));
        }
  }
  return m;
}

double homothety_defect(const VaismanStructure& vs, const Point& p) {
  const double l = vs.lambda;
  const Vec x = p.x, y = l * p.x;
  double m = (l * l * metric_at(vs, y) - metric_at(vs, x)).cwiseAbs().maxCoeff();
  m = std::max(m, (l * lee_form_at(vs, y) - lee_form_at(vs, x)).cwiseAbs().maxCoeff());
  std::vector<DistributionName> names = {DistributionName::T, DistributionName::V};
  if (vs.flavor == Flavor::LCHK) {
    names.push_back(DistributionName::D);
    names.push_back(DistributionName::S);
  }
  const Chart wide = Chart::punctured(kDim, 0.0, 1e300);
  for (auto n : names)
    m = std::max(m, (distribution_projector(vs, n, Point(wide, y)) - distribution_projector(vs, n, Point(wide, x)))
                        .cwiseAbs()
                        .maxCoeff());
  return m;
}

std::vector<std::vector<Vec>> sample_loops(const VaismanStructure& vs, Rng& rng, int count, double side) {
  std::vector<std::vector<Vec>> loops;
  for (int i = 0; i < count; ++i) {
    const Vec base = vs.chart.sample_shell(rng, 0.8, 1.5);
    const Vec e1 = rng.unit_vec(kDim);
    Vec e2 = rng.unit_vec(kDim);
    e2 = (e2 - e2.dot(e1) * e1).normalized();
    loops.push_back(square_loop(base, e1, e2, side));
  }
  return loops;
}

HolonomyBlockReport holonomy_block_check(const WeylConnection& wc, DistributionName first, DistributionName second,
                                         const std::vector<std::vector<Vec>>& loops, int steps_per_segment) {
  HolonomyBlockReport rep;
  rep.identity_checked = second == DistributionName::S;
  const Connection conn = wc.connection();
  const Mat Id = Mat::Identity(kDim, kDim);
  for (const auto& loop : loops) {
    const Point p(wc.vs.chart, loop.front());
    const Mat PA = distribution_projector(wc.vs, first, p);
    const Mat PB = distribution_projector(wc.vs, second, p);
    const Mat H = loop_holonomy(conn, loop, kDim, steps_per_segment);
    rep.off_block = std::max({rep.off_block, ((Id - PA) * H * PA).norm(), ((Id - PB) * H * PB).norm()});
    rep.identity_defect = std::max(rep.identity_defect, ((H - Id) * PB).norm());
    ++rep.loops;
  }
  return rep;
}

}  // namespace hopf
