#pragma once

#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace chebz {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// An open interval (a, b) or the circle parameterized on [0, 2*pi).
class Domain {
 public:
  enum class Kind { Interval, Circle };

  static Domain interval(double a, double b);
  static Domain circle();

  Kind kind() const noexcept { return kind_; }
  bool is_circle() const noexcept { return kind_ == Kind::Circle; }
  double lo() const noexcept { return a_; }
  double hi() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }

  // Circle: reduce to [0, 2*pi). Interval: identity.
  double wrap(double t) const;
  bool contains(double t) const;  // closed interval / any point on the circle

  bool operator==(const Domain&) const = default;

 private:
  Domain(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  Kind kind_;
  double a_;
  double b_;
};

// Real-valued function of one parameter. Values are immutable closures; copies
// share the closure. `kinks` lists parameters where the function may fail to be
// smooth (jumps of a step factor, for example); quadrature splits there.
class Func1D {
 public:
  using Eval = std::function<double(double)>;

  Func1D() = default;
  Func1D(Eval eval, std::string label = {}, std::vector<double> kinks = {});

  double operator()(double t) const { return (*eval_)(t); }
  const std::string& label() const noexcept { return label_; }
  std::span<const double> kinks() const noexcept { return kinks_; }
  explicit operator bool() const noexcept { return static_cast<bool>(eval_); }

  static Func1D constant(double c);

 private:
  std::shared_ptr<const Eval> eval_;
  std::string label_;
  std::vector<double> kinks_;
};

Func1D product(const Func1D& f, const Func1D& g);
Func1D product(const Func1D& f, const Func1D& g, const Func1D& h);
Func1D scaled(const Func1D& f, double c);
Func1D negated(const Func1D& f);
Func1D linear_combination(std::span<const Func1D> basis, std::span<const double> coeffs,
                          std::string label = {});

struct QuadSpec {
  enum class Scheme { GaussComposite, PeriodicTrapezoid };
  Scheme scheme = Scheme::GaussComposite;
  int panels = 32;
  int nodes_per_panel = 16;

  static QuadSpec gauss(int panels, int nodes_per_panel);
  static QuadSpec trapezoid(int nodes);
  // 1024-node periodic trapezoid on the circle, 32 x 16 Gauss-Legendre otherwise.
  static QuadSpec default_for(const Domain& dom);

  int total_nodes() const noexcept { return panels * nodes_per_panel; }
};

void validate(const QuadSpec& quad, const Domain& dom);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int k);

double integrate(const Func1D& f, const Domain& dom, const QuadSpec& quad);

// Composite Gauss-Legendre on [lo, hi], splitting at the kinks of f. The
// argument handed to f is wrapped through `dom` so arcs may run past 2*pi.
double integrate_range(const Func1D& f, const Domain& dom, double lo, double hi, int panels,
                       int nodes_per_panel);

double inner_product(const Func1D& f, const Func1D& g, const Func1D& rho, const Domain& dom,
                     const QuadSpec& quad);

struct SignChangeReport {
  int count = 0;
  std::vector<double> locations;
  bool degenerate = false;
};

inline constexpr int kDefaultGrid = 2048;
inline constexpr double kDefaultZeroTol = 1e-9;

SignChangeReport count_sign_changes(const Func1D& f, const Domain& dom, int grid_n = kDefaultGrid,
                                    double tol_rel = kDefaultZeroTol);

// Extrema are sign changes of the derivative; on an interval both endpoints
// count as extremal.
SignChangeReport count_extrema(const Func1D& f, const Domain& dom, int grid_n = kDefaultGrid,
                               double tol_rel = kDefaultZeroTol);

// Count-only form of the collapse-then-count rule on precomputed samples.
// Returns -1 when every sample is numerically zero.
int count_sign_transitions(std::span<const double> values, bool cyclic,
                           double tol_rel = kDefaultZeroTol);

// Sample parameters used by the counting routines (cell-centred on an interval,
// starting at 0 on the circle).
std::vector<double> sample_grid(const Domain& dom, int n);

}  // namespace chebz
