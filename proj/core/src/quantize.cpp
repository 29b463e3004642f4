#include "hopfmod/quantize.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hopf {

int Monomial::z_degree() const {
  int d = 0;
  for (auto e : z) d += e;
  return d;
}

int Monomial::q_degree() const { return std::popcount(static_cast<unsigned>(q)); }

Germ Germ::vacuum() { return from(Monomial{}, 1.0); }

Germ Germ::from(const Monomial& m, cplx c) {
  Germ g;
  g.add(m, c);
  return g;
}

void Germ::add(const Monomial& m, cplx c) {
  if (c == cplx(0.0)) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second == cplx(0.0)) terms_.erase(it);
}

Germ Germ::operator+(const Germ& o) const {
  Germ r = *this;
  for (const auto& [m, c] : o.terms_) r.add(m, c);
  return r;
}

Germ Germ::operator-(const Germ& o) const {
  Germ r = *this;
  for (const auto& [m, c] : o.terms_) r.add(m, -c);
  return r;
}

Germ Germ::operator*(cplx s) const {
  Germ r;
  for (const auto& [m, c] : terms_) r.add(m, c * s);
  return r;
}

namespace {

// sign of moving q_i through the generators of lower index
double q_sign(std::uint8_t mask, int i) {
  const unsigned below = mask & ((1u << i) - 1u);
  return std::popcount(below) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

Germ apply_operator(const FieldOperator& op, const Germ& g) {
  Germ out;
  if (op.sector == Sector::z) {
    if (op.index < 0 || op.index >= kZGenerators) throw std::out_of_range("z index");
    for (const auto& [m, c] : g.terms()) {
      Monomial n = m;
      if (op.kind == OpKind::create) {
        if (n.z[op.index] == 255) throw std::overflow_error("z exponent overflow");
        ++n.z[op.index];
        out.add(n, c);
      } else if (n.z[op.index] > 0) {
        const double k = n.z[op.index];
        --n.z[op.index];
        out.add(n, c * k);
      }
    }
    return out;
  }
  if (op.index < 0 || op.index >= kQGenerators) throw std::out_of_range("q index");
  const std::uint8_t bit = static_cast<std::uint8_t>(1u << op.index);
  for (const auto& [m, c] : g.terms()) {
    const bool has = (m.q & bit) != 0;
    if (op.kind == OpKind::create ? has : !has) continue;
    Monomial n = m;
    n.q = static_cast<std::uint8_t>(m.q ^ bit);
    out.add(n, c * q_sign(m.q, op.index));
  }
  return out;
}

std::vector<Monomial> monomial_basis(int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("negative degree");
  std::vector<Monomial> out;
  const int qmax = std::min(max_degree, kQGenerators);
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      for (int c = 0; a + b + c <= max_degree; ++c)
        for (int d = 0; a + b + c + d <= max_degree; ++d)
          for (unsigned mask = 0; mask < (1u << kQGenerators); ++mask) {
            if (std::popcount(mask) > qmax) continue;
            Monomial m;
            m.z = {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c),
                   static_cast<std::uint8_t>(d)};
            m.q = static_cast<std::uint8_t>(mask);
            out.push_back(m);
          }
  return out;
}

namespace {

std::string op_name(const FieldOperator& op) {
  std::string s = op.sector == Sector::z ? (op.kind == OpKind::create ? "z" : "Z") : (op.kind == OpKind::create ? "q" : "Q");
  return s + std::to_string(op.index);
}

// a b - sign b a on a basis germ
Germ bracket(const FieldOperator& a, const FieldOperator& b, const Germ& g, double sign) {
  return apply_operator(a, apply_operator(b, g)) - apply_operator(b, apply_operator(a, g)) * sign;
}

}  // namespace

CcrCarReport check_ccr_car(int max_degree) {
  if (max_degree < 2) throw std::invalid_argument("max_degree must be at least 2");
  CcrCarReport rep;
  rep.max_degree = max_degree;
  const auto basis = monomial_basis(max_degree);
  rep.basis_size = static_cast<long>(basis.size());

  std::vector<FieldOperator> zs, qs;
  for (int i = 0; i < kZGenerators; ++i) {
    zs.push_back(FieldOperator::z_op(OpKind::create, i));
    zs.push_back(FieldOperator::z_op(OpKind::annihilate, i));
  }
  for (int i = 0; i < kQGenerators; ++i) {
    qs.push_back({OpKind::create, Sector::q, i});
    qs.push_back({OpKind::annihilate, Sector::q, i});
  }

  auto record = [&rep](bool ok, bool& flag, const std::string& what) {
    ++rep.relations_checked;
    if (ok) return;
    ++rep.failures;
    flag = false;
    if (rep.failed.size() < 20) rep.failed.push_back(what);
  };

  // expected value of the (anti)commutator a b -/+ b a: delta when {a, b} = {annihilator_i, creator_i}
  auto expected = [](const FieldOperator& a, const FieldOperator& b) -> double {
    if (a.index != b.index || a.kind == b.kind) return 0.0;
    return a.kind == OpKind::annihilate ? 1.0 : -1.0;
  };

  for (const auto& m : basis) {
    const Germ g = Germ::from(m);
    for (const auto& a : zs)
      for (const auto& b : zs) {
        // commutator: [Z, z] = 1, [z, Z] = -1 under this ordering
        const Germ want = g * expected(a, b);
        record(bracket(a, b, g, 1.0) == want, rep.ccr, "[" + op_name(a) + "," + op_name(b) + "]");
      }
    for (const auto& a : qs)
      for (const auto& b : qs) {
        const double e = (a.index == b.index && a.kind != b.kind) ? 1.0 : 0.0;
        record(bracket(a, b, g, -1.0) == g * e, rep.car, "{" + op_name(a) + "," + op_name(b) + "}");
      }
    for (const auto& a : zs)
      for (const auto& b : qs) record(bracket(a, b, g, 1.0).is_zero(), rep.mixed, "[" + op_name(a) + "," + op_name(b) + "]");

    // composite creators C_ik = z_i q_k
    for (int i = 0; i < kZGenerators; ++i)
      for (int k = 0; k < kQGenerators; ++k)
        for (int j = 0; j < kZGenerators; ++j)
          for (int l = k; l < kQGenerators; ++l) {
            const FieldOperator zi = FieldOperator::z_op(OpKind::create, i), zj = FieldOperator::z_op(OpKind::create, j);
            const FieldOperator qk{OpKind::create, Sector::q, k}, ql{OpKind::create, Sector::q, l};
            const Germ ab = apply_operator(zi, apply_operator(qk, apply_operator(zj, apply_operator(ql, g))));
            const Germ ba = apply_operator(zj, apply_operator(ql, apply_operator(zi, apply_operator(qk, g))));
            record((ab + ba).is_zero(), rep.composite,
                   "{z" + std::to_string(i) + "q" + std::to_string(k) + ",z" + std::to_string(j) + "q" + std::to_string(l) + "}");
          }
  }
  return rep;
}

Eigen::Matrix4d gamma0_slice(const PPWaveMetric& m, const Point& p) {
  const Christoffel G = christoffel(m.metric(), p);
  const Eigen::Vector4d e0 = Tetrad{m}.coframe(p.x).row(0).transpose();
  Eigen::Matrix4d S = Eigen::Matrix4d::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int ka = 0; ka < 4; ++ka) S(nu, ka) += e0[mu] * G(mu, nu, ka);
  return S;
}

double coupling_field(const PPWaveMetric& m, const Vec& X, const Point& p) {
  if (X.size() != 4) throw std::invalid_argument("X must have 4 components");
  const Eigen::Vector4d v = X;
  return v.dot(gamma0_slice(m, p) * v);
}

Eigen::Vector4cd current(const VectorSpinor& psi, const Eigen::MatrixXcd& generator, double a_X) {
  const Eigen::MatrixXcd& c = psi.c;
  if (c.cols() != 2) throw std::invalid_argument("vector spinor needs 2 spinor columns");
  if (generator.rows() != c.rows() || generator.cols() != c.rows()) throw std::invalid_argument("generator size mismatch");
  if ((generator + generator.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("generator is not anti-Hermitian");
  const Eigen::MatrixXcd A = cplx(0.0, -1.0) * generator * c;
  Eigen::Vector4cd out;
  for (int mu = 0; mu < 4; ++mu) {
    Eigen::Matrix2cd s;
    for (int k = 0; k < 2; ++k) s.col(k) = chiral_sigma_action(Eigen::Vector2cd::Unit(k), psi.chirality, mu);
    const Eigen::MatrixXcd B = A * s.transpose();
    out[mu] = a_X * (c.conjugate().cwiseProduct(B)).sum();
  }
  return out;
}

std::vector<Eigen::MatrixXcd> su3_generators() {
  using M = Eigen::Matrix3cd;
  const cplx I(0.0, 1.0);
  std::vector<M> lam(8, M::Zero());
  lam[0](0, 1) = lam[0](1, 0) = 1.0;
  lam[1](0, 1) = -I;
  lam[1](1, 0) = I;
  lam[2](0, 0) = 1.0;
  lam[2](1, 1) = -1.0;
  lam[3](0, 2) = lam[3](2, 0) = 1.0;
  lam[4](0, 2) = -I;
  lam[4](2, 0) = I;
  lam[5](1, 2) = lam[5](2, 1) = 1.0;
  lam[6](1, 2) = -I;
  lam[6](2, 1) = I;
  lam[7](0, 0) = lam[7](1, 1) = 1.0 / std::sqrt(3.0);
  lam[7](2, 2) = -2.0 / std::sqrt(3.0);
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& l : lam) out.emplace_back(0.5 * I * l);
  return out;
}

std::vector<Eigen::MatrixXcd> sp1_generators() {
  std::vector<Eigen::MatrixXcd> out;
  for (int j = 1; j <= 3; ++j) out.emplace_back(cplx(0.0, 0.5) * pauli(j));
  return out;
}

Eigen::MatrixXcd u1_generator(int dim) { return cplx(0.0, 1.0) * Eigen::MatrixXcd::Identity(dim, dim); }

CurvatureForms homogeneous_curvature(const std::vector<Eigen::MatrixXcd>& generators) {
  if (generators.empty()) throw std::invalid_argument("no generators");
  const int k = static_cast<int>(generators.front().rows());
  for (const auto& Y : generators) {
    if (Y.rows() != k || Y.cols() != k) throw std::invalid_argument("generator size mismatch");
    if ((Y + Y.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw std::invalid_argument("generator is not anti-Hermitian");
  }
  CurvatureForms out;
  out.dim = k;
  out.F.assign(k * k, Eigen::MatrixXcd::Zero(k, k));
  out.Fprime.assign(k * k, Eigen::MatrixXcd::Zero(k, k));
  for (int m = 0; m < k; ++m)
    for (int n = 0; n < k; ++n)
      for (const auto& Y : generators) {
        out.F[m * k + n] += 0.5 * (Y(m, n) - Y(n, m)) * Y;
        out.Fprime[m * k + n] += 0.5 * (Y(m, n) + Y(n, m)) * Y;
      }
  return out;
}

StressEnergy stress_energy(const SwannSection& sec, const MetricField& target, const MetricField& base,
                           const Point& p, double step) {
  const Mat J = section_jacobian(sec, p.x, step);
  const Mat b = target.eval(sec.eval(p.x));
  const Mat g = base.eval(p.x);
  const Mat pull = J.transpose() * b * J;
  StressEnergy out;
  out.e = (g.inverse() * pull).trace();
  out.S = out.e * g - pull;
  if (out.e > 0.0) out.G = 1.0 / out.e;
  return out;
}

StressEnergy stress_energy(const SwannSection& sec, const VaismanStructure& vs, const PPWaveMetric& m, const Point& p,
                           double step) {
  return stress_energy(sec, vs.metric(), m.metric(), p, step);
}

}  // namespace hopf
