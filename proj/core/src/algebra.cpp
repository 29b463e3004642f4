#include "hopfmod/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace hopf {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw std::domain_error("inverse of zero quaternion");
  return (1.0 / n2) * conj();
}

Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

std::array<cplx, 2> to_c2(const Quaternion& q) { return {cplx(q.w, q.x), cplx(q.y, q.z)}; }

Quaternion from_c2(cplx z1, cplx z2) { return {z1.real(), z1.imag(), z2.real(), z2.imag()}; }

bool ImaginaryUnit::normalized(double tol) const {
  return std::abs(a * a + b * b + c * c - 1.0) <= tol;
}

Eigen::Vector4d apply_structure(const HypercomplexAction& act, const Eigen::Vector4d& X) {
  if (!act.unit.normalized()) throw std::invalid_argument("unit not normalized");
  const Quaternion u = act.unit.quaternion();
  const Quaternion q(X);
  if (act.side == Side::negative) return (u * q).vec();
  return (-(q * u)).vec();
}

Eigen::Matrix4d structure_matrix(const HypercomplexAction& act) {
  Eigen::Matrix4d m;
  for (int c = 0; c < 4; ++c) m.col(c) = apply_structure(act, Eigen::Vector4d::Unit(c));
  return m;
}

Eigen::Matrix2cd pauli(int mu) {
  const cplx I(0, 1);
  Eigen::Matrix2cd s;
  switch (mu) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::out_of_range("pauli index");
  }
  return s;
}

Eigen::Matrix2cd JordanElement::matrix() const {
  return t * pauli(0) + x * pauli(1) + y * pauli(2) + z * pauli(3);
}

JordanElement JordanElement::from_matrix(const Eigen::Matrix2cd& m, double tol) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::logic_error("Jordan element is not Hermitian");
  // coefficient of sigma^mu is tr(sigma^mu m)/2
  auto coef = [&](int mu) { return 0.5 * (pauli(mu) * m).trace().real(); };
  return {coef(0), coef(1), coef(2), coef(3)};
}

JordanElement JordanElement::basis(int mu) {
  JordanElement e;
  switch (mu) {
    case 0: e.t = 1; break;
    case 1: e.x = 1; break;
    case 2: e.y = 1; break;
    case 3: e.z = 1; break;
    default: throw std::out_of_range("Jordan basis index");
  }
  return e;
}

JordanElement jordan_mul(const JordanElement& a, const JordanElement& b) {
  const Eigen::Matrix2cd A = a.matrix(), B = b.matrix();
  return JordanElement::from_matrix(0.5 * (A * B + B * A), 1e-9);
}

GaussMatrix<2> pauli_exact(int mu) {
  GaussMatrix<2> s;
  switch (mu) {
    case 0: s(0, 0) = {1, 0}; s(1, 1) = {1, 0}; break;
    case 1: s(0, 1) = {1, 0}; s(1, 0) = {1, 0}; break;
    case 2: s(0, 1) = {0, -1}; s(1, 0) = {0, 1}; break;
    case 3: s(0, 0) = {1, 0}; s(1, 1) = {-1, 0}; break;
    default: throw std::out_of_range("pauli index");
  }
  return s;
}

GaussMatrix<4> gamma_exact(int mu) {
  if (mu < 0 || mu > 3) throw std::out_of_range("gamma index");
  const GaussMatrix<2> s = pauli_exact(mu);
  const std::int64_t lower = mu == 0 ? 1 : -1;
  GaussMatrix<4> g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      g(r, c + 2) = s(r, c);
      g(r + 2, c) = s(r, c) * GaussInt{lower, 0};
    }
  return g;
}

GaussMatrix<4> gamma5_exact() {
  return (gamma_exact(0) * gamma_exact(1) * gamma_exact(2) * gamma_exact(3)).scaled({0, 1});
}

GaussMatrix<2> jordan_mul_exact(const GaussMatrix<2>& a, const GaussMatrix<2>& b) {
  GaussMatrix<2> out;
  if (!(a * b + b * a).divide(2, out)) throw std::logic_error("Jordan product not integral");
  return out;
}

namespace {
Eigen::Matrix4cd to_eigen(const GaussMatrix<4>& g) {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      m(r, c) = cplx(static_cast<double>(g(r, c).re), static_cast<double>(g(r, c).im));
  return m;
}
}  // namespace

CliffordElement gamma(int mu) { return {to_eigen(gamma_exact(mu)), Grade::vector}; }

CliffordElement gamma5() { return {to_eigen(gamma5_exact()), Grade::pseudoscalar}; }

CliffordElement jordan_to_clifford(int mu) {
  return {gamma(mu).m * gamma(0).m, mu == 0 ? Grade::scalar : Grade::bivector};
}

DiracSpinor DiracSpinor::embed(const Eigen::Vector2cd& weyl, Chirality ch) {
  DiracSpinor s;
  if (ch == Chirality::R) s.c.head<2>() = weyl;
  else s.c.tail<2>() = weyl;
  return s;
}

DiracSpinor DiracSpinor::tilde() const { return DiracSpinor(gamma(0).m * c); }

Eigen::Matrix4cd chiral_projector(Chirality ch) {
  // gamma5 = diag(-1,-1,+1,+1) for the displayed matrices
  const double s = ch == Chirality::L ? 1.0 : -1.0;
  return 0.5 * (Eigen::Matrix4cd::Identity() + s * gamma5().m);
}

cplx dirac_pairing(const DiracSpinor& a, const Eigen::Vector4cd& b) {
  return a.c.dot(gamma(0).m * b);
}

cplx hermitian_pairing(const DiracSpinor& a, const Eigen::Vector4cd& b) { return a.c.dot(b); }

Eigen::Vector2cd chiral_sigma_action(const Eigen::Vector2cd& spinor, Chirality ch, int mu) {
  if (mu == 0) return spinor;
  const double s = ch == Chirality::L ? 1.0 : -1.0;
  return s * (pauli(mu) * spinor);
}

}  // namespace hopf
