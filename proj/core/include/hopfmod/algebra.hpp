#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace hopf {

using cplx = std::complex<double>;

// Conventions shared by every module. Reports echo these verbatim.
namespace conventions {
inline constexpr std::array<int, 4> eta = {+1, -1, -1, -1};
inline constexpr std::string_view signature = "(+,-,-,-)";
inline constexpr std::string_view spinor_ordering = "(R upper, L lower)";
inline constexpr std::string_view quaternion_c2 = "q = z1 + z2 j, z1 = w + x i, z2 = y + z i";
}  // namespace conventions

struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  explicit Quaternion(const Eigen::Vector4d& v) : w(v[0]), x(v[1]), y(v[2]), z(v[3]) {}

  static constexpr Quaternion real(double r) { return {r, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  Eigen::Vector4d vec() const { return {w, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const;
  Quaternion inverse() const;

  constexpr bool operator==(const Quaternion&) const = default;
};

Quaternion quat_mul(const Quaternion& a, const Quaternion& b);

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return quat_mul(a, b); }
constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(double s, const Quaternion& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }

// q = z1 + z2 j
std::array<cplx, 2> to_c2(const Quaternion& q);
Quaternion from_c2(cplx z1, cplx z2);

// Point a*I + b*J + c*K of the two-sphere of complex structures.
struct ImaginaryUnit {
  double a = 1.0, b = 0.0, c = 0.0;

  bool normalized(double tol = 1e-12) const;
  Quaternion quaternion() const { return {0.0, a, b, c}; }
};

enum class Side { negative, positive };

// negative: X -> uX, positive: X -> -Xu
struct HypercomplexAction {
  Side side = Side::negative;
  ImaginaryUnit unit;
};

// Throws std::invalid_argument("unit not normalized").
Eigen::Vector4d apply_structure(const HypercomplexAction& act, const Eigen::Vector4d& X);
Eigen::Matrix4d structure_matrix(const HypercomplexAction& act);

// ---- Pauli / Jordan spin factor ------------------------------------------

Eigen::Matrix2cd pauli(int mu);

struct JordanElement {
  double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

  Eigen::Matrix2cd matrix() const;
  // Throws std::logic_error if m is not Hermitian to tol.
  static JordanElement from_matrix(const Eigen::Matrix2cd& m, double tol = 1e-12);
  static JordanElement basis(int mu);
};

JordanElement jordan_mul(const JordanElement& a, const JordanElement& b);

// ---- Exact Gaussian-integer matrices for Clifford/Jordan identities --------

struct GaussInt {
  std::int64_t re = 0, im = 0;
  constexpr bool operator==(const GaussInt&) const = default;
};
constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
constexpr GaussInt operator*(GaussInt a, GaussInt b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <int N>
struct GaussMatrix {
  std::array<GaussInt, N * N> a{};

  static GaussMatrix identity(std::int64_t s = 1) {
    GaussMatrix m;
    for (int i = 0; i < N; ++i) m(i, i) = {s, 0};
    return m;
  }
  GaussInt& operator()(int r, int c) { return a[r * N + c]; }
  const GaussInt& operator()(int r, int c) const { return a[r * N + c]; }
  bool operator==(const GaussMatrix&) const = default;
  bool is_zero() const { return *this == GaussMatrix{}; }

  GaussMatrix operator+(const GaussMatrix& o) const {
    GaussMatrix m;
    for (int i = 0; i < N * N; ++i) m.a[i] = a[i] + o.a[i];
    return m;
  }
  GaussMatrix operator-(const GaussMatrix& o) const {
    GaussMatrix m;
    for (int i = 0; i < N * N; ++i) m.a[i] = a[i] - o.a[i];
    return m;
  }
  GaussMatrix operator*(const GaussMatrix& o) const {
    GaussMatrix m;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        GaussInt acc;
        for (int k = 0; k < N; ++k) acc = acc + (*this)(r, k) * o(k, c);
        m(r, c) = acc;
      }
    return m;
  }
  GaussMatrix scaled(GaussInt s) const {
    GaussMatrix m;
    for (int i = 0; i < N * N; ++i) m.a[i] = s * a[i];
    return m;
  }
  // Exact division; returns false if some entry is not divisible.
  bool divide(std::int64_t d, GaussMatrix& out) const {
    for (int i = 0; i < N * N; ++i) {
      if (a[i].re % d != 0 || a[i].im % d != 0) return false;
      out.a[i] = {a[i].re / d, a[i].im / d};
    }
    return true;
  }
};

GaussMatrix<2> pauli_exact(int mu);
GaussMatrix<4> gamma_exact(int mu);
GaussMatrix<4> gamma5_exact();
// Jordan product on integer-coefficient Hermitian matrices. Throws if the
// symmetrized product is not divisible by two (never for spin-factor inputs).
GaussMatrix<2> jordan_mul_exact(const GaussMatrix<2>& a, const GaussMatrix<2>& b);

// ---- Chiral Clifford algebra Cl(3,1) ---------------------------------------

enum class Grade { unspecified, scalar, vector, bivector, pseudoscalar };

struct CliffordElement {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  Grade grade = Grade::unspecified;
};

CliffordElement gamma(int mu);          // throws std::out_of_range
CliffordElement gamma5();
CliffordElement jordan_to_clifford(int mu);  // gamma^mu gamma^0

enum class Chirality { L, R };

struct DiracSpinor {
  Eigen::Vector4cd c = Eigen::Vector4cd::Zero();

  DiracSpinor() = default;
  explicit DiracSpinor(const Eigen::Vector4cd& v) : c(v) {}
  DiracSpinor(cplx r1, cplx r2, cplx l1, cplx l2) : c(r1, r2, l1, l2) {}
  static DiracSpinor embed(const Eigen::Vector2cd& weyl, Chirality ch);

  Eigen::Vector2cd right() const { return c.head<2>(); }
  Eigen::Vector2cd left() const { return c.tail<2>(); }
  Eigen::Vector2cd part(Chirality ch) const { return ch == Chirality::R ? right() : left(); }
  DiracSpinor tilde() const;  // gamma^0 psi, swaps the halves
};

// Projector onto the chirality block; expressed through gamma5.
Eigen::Matrix4cd chiral_projector(Chirality ch);

cplx dirac_pairing(const DiracSpinor& a, const Eigen::Vector4cd& b);      // a^dagger gamma^0 b
cplx hermitian_pairing(const DiracSpinor& a, const Eigen::Vector4cd& b);  // a^dagger b

Eigen::Vector2cd chiral_sigma_action(const Eigen::Vector2cd& spinor, Chirality ch, int mu);

}  // namespace hopf
