#pragma once

#include <string_view>
#include <vector>

#include "hopfmod/manifold.hpp"

namespace hopf {

enum class Flavor { LCK, LCHK };

// Conformally flat structure e/|x|^2 on the punctured cover R^8 = C^4 = H^2.
// Coordinates: (x0 + i x1, x2 + i x3, ...) as C^4 and (x0..x3), (x4..x7) as H^2.
struct VaismanStructure {
  Flavor flavor = Flavor::LCK;
  double lambda = 2.0;    // homothety q -> lambda q
  int lee_sign = 0;       // s in theta = s d log|x|^2; 0 until resolved
  bool lee_enabled = true;  // false forces theta = 0
  bool conformal = true;    // false replaces b by the Euclidean metric
  Chart chart = Chart::punctured(8, 0.1, 10.0);

  static VaismanStructure lck(double lambda = 2.0);   // sign resolved from the Lee identity
  static VaismanStructure lchk(double lambda = 2.0);
  static VaismanStructure flat();                      // Euclidean metric, theta = 0

  MetricField metric() const;
  int structure_count() const { return flavor == Flavor::LCK ? 1 : 3; }
  // LCK: 0 -> I. LCHK: 0,1,2 -> left multiplication by i, j, k on each quaternion factor.
  Mat complex_structure(int which = 0) const;
};

// Picks s in {+1,-1} minimising the Lee identity residual at a fixed point set.
int resolve_lee_sign(const VaismanStructure& vs);

Mat vaisman_metric(const VaismanStructure& vs, const Point& p);  // throws std::domain_error at origin
Vec lee_form(const VaismanStructure& vs, const Point& p);
Vec lee_field(const VaismanStructure& vs, const Point& p);
Vec lee_form_at(const VaismanStructure& vs, const Vec& x);

struct WeylConnection {
  VaismanStructure vs;
  DiffOptions opt;

  Christoffel christoffel_at(const Vec& x) const;
  Connection connection() const;
};

using VectorField = std::function<Vec(const Vec&)>;

// nabla^LC_X Y + (b(X,Y) theta# - theta(X) Y - theta(Y) X) / 2
Vec weyl_derivative(const WeylConnection& wc, const VectorField& X, const VectorField& Y, const Point& p);

// Max over components of nabla^w_X(JY) - J nabla^w_X Y.
double weyl_structure_defect(const WeylConnection& wc, const Mat& J, const VectorField& X,
                             const VectorField& Y, const Point& p);

// Fits c in (nabla^w_X b)(Y,Z) = c theta(X) b(Y,Z) at p, from the best-conditioned components.
double weyl_metric_ratio(const WeylConnection& wc, const Point& p);
// Max |(nabla^w b) - c theta (x) b| at p.
double weyl_metricity_residual(const WeylConnection& wc, double c, const Point& p);

enum class DistributionName { T, V, D, S };
std::string_view to_string(DistributionName n);

// Lee-type fields spanning V (theta#, I theta#) or S (theta#, I theta#, J theta#, K theta#).
std::vector<Vec> lee_type_fields(const VaismanStructure& vs, DistributionName span, const Vec& x);

// b-orthogonal projector (8x8); throws std::domain_error on a degenerate span.
Mat distribution_projector(const VaismanStructure& vs, DistributionName name, const Point& p);

struct LeeIdentityReport {
  double residual = 0.0;       // max |d omega - omega ^ theta|
  double d_omega = 0.0;        // max |d omega|
  double omega_wedge_theta = 0.0;
};
LeeIdentityReport lee_identity_check(const VaismanStructure& vs, const Point& p, double step = 1e-5);

double lee_closedness(const VaismanStructure& vs, const Point& p, double step = 1e-5);   // max |d theta|
double lee_parallelism(const VaismanStructure& vs, const Point& p, double step = 1e-5);  // max |nabla^LC theta|
// d omega evaluated on triples of an orthonormal basis of T at p.
double restricted_kahler_residual(const VaismanStructure& vs, const Point& p, double step = 1e-5);
// Max deviation of b, theta and all projectors from their pullbacks under x -> lambda x.
double homothety_defect(const VaismanStructure& vs, const Point& p);

struct HolonomyBlockReport {
  int loops = 0;
  double off_block = 0.0;         // max of |(1-P_A) H P_A|, |(1-P_B) H P_B|
  double identity_defect = 0.0;   // max |(H - 1) P_B|
  bool identity_checked = false;  // only for the (D,S) pair
};

std::vector<std::vector<Vec>> sample_loops(const VaismanStructure& vs, Rng& rng, int count, double side);

HolonomyBlockReport holonomy_block_check(const WeylConnection& wc, DistributionName first, DistributionName second,
                                         const std::vector<std::vector<Vec>>& loops, int steps_per_segment = 24);

}  // namespace hopf
