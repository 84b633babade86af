#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chebz/chebsys.hpp"
#include "chebz/check.hpp"
#include "chebz/funcspace.hpp"
#include "chebz/linalg.hpp"
#include "chebz/orthosynth.hpp"

namespace chebz {

inline constexpr int kMaxCurveDim = 8;

// Points in R^d, d <= kMaxCurveDim; stored inline so evaluating a curve does
// not allocate.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxCurveDim, 1>;

// Parameterized curve x : D -> R^d. Closed exactly when D is the circle.
class CurveRd {
 public:
  using Map = std::function<Point(double)>;

  CurveRd(Map map, int dim, Domain dom, std::string label = {}, std::vector<double> kinks = {});

  Point operator()(double t) const { return (*map_)(t); }
  int dim() const noexcept { return dim_; }
  const Domain& domain() const noexcept { return dom_; }
  bool closed() const noexcept { return dom_.is_circle(); }
  const std::string& label() const noexcept { return label_; }
  // Parameters where the parameterization is only piecewise smooth.
  std::span<const double> kinks() const noexcept { return kinks_; }
  // Closed convex curves only exist in even dimension.
  bool parity_ok() const noexcept { return !closed() || dim_ % 2 == 0; }

 private:
  std::shared_ptr<const Map> map_;
  int dim_;
  Domain dom_;
  std::string label_;
  std::vector<double> kinks_;
};

// (t, t^2, ..., t^d) on [a, b].
CurveRd moment_curve(int d, double a, double b);
// (cos t, ..., cos kt, sin t, ..., sin kt) on the circle, d = 2k.
CurveRd trig_curve(int k);
// (t^alpha_1, ..., t^alpha_d) on [a, b], 0 < a.
CurveRd power_curve(std::span<const double> alphas, double a, double b);
// (t, e^t) on [a, b].
CurveRd exp_graph(double a = -1.0, double b = 1.0);
// (t, sin t + c) on [a, b].
CurveRd sine_graph(double c, double a, double b);
// Strictly convex closed plane curve hugging a regular m-gon with
// circumradius r: small round corners joined by nearly flat arcs. The
// parameter is the angle of the outer normal.
CurveRd smoothed_polygon(int m, double r);

// Builds a curve from a short text form such as "moment:3,-1,1" or "trig:2".
// Forms: moment:d,a,b  trig:k  power:a,b,alpha_1,...  exp:a,b  sine:c,a,b
// polygon:m,r  circle
CurveRd curve_from_spec(const std::string& spec);

// Midpoint between the smallest and largest distance from the origin.
double intermediate_radius(const CurveRd& curve, int grid_n = 4096);

struct Hyperplane {
  Point normal;  // unit length
  double offset = 0.0;

  // Normalizes (normal, offset) jointly by |normal|.
  static Hyperplane from(const Point& normal, double offset);
  double eval(const Point& x) const { return normal.dot(x) - offset; }
};

// Hyperplane through d points of R^d. Throws when they are affinely dependent.
Hyperplane hyperplane_through(std::span<const Point> pts);

struct IntersectionCount {
  int count_with_multiplicity = 0;
  std::vector<double> simple_roots;  // sign changes of the unperturbed functional
  double perturbation_used = 0.0;    // shift or tilt that revealed the count, 0 if none
  bool degenerate = false;           // the curve lies in the hyperplane
};

inline constexpr double kDefaultPerturbation = 1e-3;

// Sign changes of <normal, x(t)> - offset, maximized over offset shifts of
// +-eps, +-eps/10, +-eps/100 times the functional's range and over small tilts
// about each crossing. A tangency shows up as two crossings under one of the
// shifts, an inflection tangent as three under a tilt.
IntersectionCount hyperplane_intersections(const CurveRd& curve, const Hyperplane& h,
                                           int grid_n = kDefaultGrid,
                                           double eps = kDefaultPerturbation);

struct ConvexityVerdict {
  ChebVerdict::Status status = ChebVerdict::Status::NoViolationFound;
  std::optional<Hyperplane> witness;
  int witness_count = 0;
  int max_count_seen = 0;
  int trials_run = 0;

  bool passed() const noexcept { return status == ChebVerdict::Status::NoViolationFound; }
};

// Randomized search for a hyperplane meeting the curve more than d times.
// Each trial tries one random hyperplane crossing the curve's range and one
// hyperplane through d random curve points.
ConvexityVerdict convexity_check(const CurveRd& curve, int trials = kDefaultChebTrials,
                                 std::uint64_t seed = 0);

// Multi-index exponents of all monomials in d variables of total degree <= n
// (exactly n when homogeneous), graded, lexicographically decreasing in each
// degree: 1, x1, x2, x1^2, x1 x2, x2^2, ...
using MultiIndex = std::vector<int>;
std::vector<MultiIndex> monomial_multi_indices(int n, int d, bool homogeneous = false);

// Monomials composed with the curve, in the order above.
std::vector<Func1D> restrict_polynomials(const CurveRd& curve, int n, bool homogeneous = false);

struct ConvexChebReport {
  int rank = 0;
  ConvexityVerdict convexity;
  ChebVerdict chebyshev;
  bool agree = false;                 // both pass or both fail
  bool witnesses_consistent = true;   // each witness transfers to the other view
};

// Convexity of the curve checked against the Chebyshev property of the affine
// functions restricted to it. Requires the restricted space to have dimension
// d + 1.
ConvexChebReport convex_chebyshev_check(const CurveRd& curve, int trials = kDefaultChebTrials,
                                        std::uint64_t seed = 0);

// Polynomials in d variables as coefficient maps over multi-indices.
struct Polynomial {
  int dim = 0;
  std::map<MultiIndex, double> coeffs;

  static Polynomial constant(int dim, double c);
  static Polynomial linear(const Hyperplane& h);  // <normal, x> - offset
  double operator()(const Point& x) const;
  int degree() const;
};
Polynomial multiply(const Polynomial& p, const Polynomial& q);

// Polynomial combination sum c_alpha x^alpha for the monomials of degree <= n.
Polynomial polynomial_from_coeffs(int dim, int n, std::span<const double> coeffs,
                                  bool homogeneous = false);

struct CurveOrthoResult {
  Func1D function;
  std::vector<Piece> pieces;
  std::vector<double> heights;
  std::vector<double> residuals;  // one per monomial
  int dimension = 0;              // dimension of the restricted polynomial space
  int kernel_dim = 0;

  double max_residual() const;
};

// Function on the curve orthogonal (parameter measure dt) to every polynomial
// of degree <= n restricted to it: a bump sin^2 on each of `pieces` equal
// parameter pieces times a height chosen from the moment matrix kernel. With a
// seed the heights are a random unit element of the kernel, otherwise the
// smallest singular direction.
CurveOrthoResult construct_orthogonal_on_curve(const CurveRd& curve, int n, int pieces,
                                               const QuadSpec& quad,
                                               std::optional<std::uint64_t> seed = {});
CurveOrthoResult construct_orthogonal_on_curve(const CurveRd& curve, int n,
                                               std::span<const double> breakpoints,
                                               const QuadSpec& quad,
                                               std::optional<std::uint64_t> seed = {});

struct CurveSignReport {
  CheckStatus status = CheckStatus::NotApplicable;
  double max_residual = 0.0;
  int sign_changes = 0;
  int bound = 0;
};

// Orthogonal to the degree <= n polynomials on a convex curve  =>  at least
// n d + 1 sign changes (n d + 2 when closed).
CurveSignReport polynomial_orthogonality_check(const CurveRd& curve, int n, const Func1D& f,
                                               const QuadSpec& quad, double tol = 1e-8);

struct SupportProduct {
  Polynomial poly;
  std::vector<Hyperplane> planes;
  SignChangeReport restricted;  // sign changes of poly along the curve
};

// Product of hyperplanes through consecutive groups of d of the given
// parameters. A short final group is completed by a cluster of auxiliary
// points that shrinks onto an endpoint (open curve) or onto the group's first
// point (closed curve). The product changes sign along the curve at exactly
// the given parameters; anything else is reported as a diagnostic.
SupportProduct support_product_polynomial(const CurveRd& curve,
                                          std::span<const double> zero_points, int group_size);

struct MassCenter {
  Point center;
  double mass = 0.0;
};

// Center of mass of density rho with respect to arc length.
MassCenter center_of_mass(const CurveRd& curve, const Func1D& rho, const QuadSpec& quad);

// |x'(t)| by central differences.
Func1D arc_speed(const CurveRd& curve);

struct ExtremaReport {
  CheckStatus status = CheckStatus::NotApplicable;
  double center_gap = 0.0;
  int extrema = 0;
  int bound = 0;
  int difference_sign_changes = 0;  // of f - (mass ratio) * reference density
};

// Positive density whose center of mass equals that of the uniform density
// has at least d + 2 extrema (endpoints count on an open curve).
ExtremaReport center_extrema_check(const CurveRd& curve, const Func1D& f, const QuadSpec& quad,
                                   double tol = 1e-8);
// Two positive densities with the same center of mass: f / g has at least
// d + 2 extrema.
ExtremaReport center_extrema_check(const CurveRd& curve, const Func1D& f, const Func1D& g,
                                   const QuadSpec& quad, double tol = 1e-8);

}  // namespace chebz
