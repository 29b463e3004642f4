#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hopf {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Seeded generator with platform-independent uniform draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Vec uniform_vec(int n, double lo, double hi);
  Vec unit_vec(int n);  // uniform on the sphere, by rejection from the cube
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

struct Chart {
  enum class Kind { box, punctured };

  int dim = 0;
  Kind kind = Kind::box;
  Vec lo, hi;                 // box
  double inner_radius = 0.1;  // punctured: excluded ball
  double outer_radius = 10.0;
  std::vector<std::string> labels;

  static Chart box(const Vec& lo, const Vec& hi, std::vector<std::string> labels = {});
  static Chart punctured(int dim, double inner = 0.1, double outer = 10.0,
                         std::vector<std::string> labels = {});

  bool contains(const Vec& x, double margin = 0.0) const;
  Vec sample(Rng& rng) const;
  // Punctured charts only: radius drawn uniformly in [r_lo, r_hi].
  Vec sample_shell(Rng& rng, double r_lo, double r_hi) const;
};

struct Point {
  const Chart* chart = nullptr;
  Vec x;

  Point(const Chart& c, Vec coords);  // throws std::invalid_argument on length mismatch
};

// Components are stored contravariant indices first, row-major.
struct TensorField {
  int dim = 0;
  int contra = 0;
  int cov = 0;
  std::function<Vec(const Vec&)> eval;

  int size() const;
};

struct MetricField {
  int dim = 0;
  int positive = 0;  // signature counts
  int negative = 0;
  std::function<Mat(const Vec&)> eval;

  // Throws std::domain_error if not symmetric or degenerate at x.
  void validate(const Vec& x, double sym_tol = 1e-12, double det_tol = 1e-10) const;
};

// Gamma^mu_{nu kappa}
struct Christoffel {
  int n = 0;
  std::vector<double> d;

  explicit Christoffel(int dim = 0) : n(dim), d(static_cast<std::size_t>(dim * dim * dim), 0.0) {}
  double& operator()(int mu, int nu, int ka) { return d[(mu * n + nu) * n + ka]; }
  double operator()(int mu, int nu, int ka) const { return d[(mu * n + nu) * n + ka]; }
  // Gamma^mu_{nu kappa} v^nu, as a matrix in (mu, kappa)
  Mat contract(const Vec& v) const;
  double max_abs() const;
};

// R^mu_{nu kappa lambda}
struct Riemann {
  int n = 0;
  std::vector<double> d;

  explicit Riemann(int dim = 0) : n(dim), d(static_cast<std::size_t>(dim * dim * dim * dim), 0.0) {}
  double& operator()(int mu, int nu, int ka, int la) { return d[((mu * n + nu) * n + ka) * n + la]; }
  double operator()(int mu, int nu, int ka, int la) const { return d[((mu * n + nu) * n + ka) * n + la]; }
  // Endomorphism V -> R(e_ka, e_la) V
  Mat endomorphism(int ka, int la) const;
};

using Connection = std::function<Christoffel(const Vec&)>;

struct DiffOptions {
  double step = 1e-5;
  bool richardson = false;
};

// Central-difference partials d_k g_ij, returned as dg[k](i,j).
std::vector<Mat> metric_partials(const MetricField& g, const Vec& x, const DiffOptions& opt = {});

Christoffel christoffel(const MetricField& g, const Point& p, double step = 1e-5, bool richardson = false);
Christoffel christoffel_at(const MetricField& g, const Vec& x, const DiffOptions& opt = {});

Connection levi_civita(const MetricField& g, DiffOptions opt = {});
Connection flat_connection(int dim);

Vec covariant_derivative(const Connection& conn, const TensorField& field, const Vec& direction,
                         const Point& p, double step = 1e-5);

// Parallel transport of a frame along the straight segment a -> b (RK4).
Mat transport_segment(const Connection& conn, const Vec& a, const Vec& b, int steps);

// Ordered product of segment transports around a closed polyline.
Mat loop_holonomy(const Connection& conn, const std::vector<Vec>& loop, int fiber_dim,
                  int steps_per_segment = 32);

std::vector<Vec> square_loop(const Vec& base, const Vec& e1, const Vec& e2, double side);

Riemann curvature(const Connection& conn, const Point& p, double step = 1e-4);

// Maximum of |R^mu_{nu ka la} + R^mu_{ka la nu} + R^mu_{la nu ka}|.
double bianchi_residual(const Riemann& R);

// Maximum over components of nabla_k g_ij.
double metricity_residual(const Connection& conn, const MetricField& g, const Point& p, double step = 1e-5);

}  // namespace hopf
