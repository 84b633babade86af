#include "chebz/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chebz/error.hpp"
#include "chebz/rng.hpp"

namespace chebz {

CurveRd::CurveRd(Map map, int dim, Domain dom, std::string label, std::vector<double> kinks)
    : map_(std::make_shared<const Map>(std::move(map))),
      dim_(dim),
      dom_(dom),
      label_(std::move(label)),
      kinks_(std::move(kinks)) {
  require(static_cast<bool>(*map_), "curve map is empty");
  require(dim_ >= 1 && dim_ <= kMaxCurveDim,
          "curve dimension must lie in [1, " + std::to_string(kMaxCurveDim) + "]");
  for (auto& k : kinks_) k = dom_.wrap(k);
  std::sort(kinks_.begin(), kinks_.end());
  kinks_.erase(std::unique(kinks_.begin(), kinks_.end()), kinks_.end());
}

CurveRd moment_curve(int d, double a, double b) {
  require(d >= 1 && d <= kMaxCurveDim, "moment curve dimension out of range");
  return CurveRd(
      [d](double t) {
        Point p(d);
        double v = 1.0;
        for (int k = 0; k < d; ++k) p(k) = (v *= t);
        return p;
      },
      d, Domain::interval(a, b), "moment:" + std::to_string(d));
}

CurveRd trig_curve(int k) {
  require(k >= 1 && 2 * k <= kMaxCurveDim, "trig curve harmonic count out of range");
  return CurveRd(
      [k](double t) {
        Point p(2 * k);
        for (int j = 1; j <= k; ++j) {
          p(j - 1) = std::cos(j * t);
          p(k + j - 1) = std::sin(j * t);
        }
        return p;
      },
      2 * k, Domain::circle(), "trig:" + std::to_string(k));
}

CurveRd power_curve(std::span<const double> alphas, double a, double b) {
  const int d = static_cast<int>(alphas.size());
  require(d >= 1 && d <= kMaxCurveDim, "power curve dimension out of range");
  require(a > 0.0, "power curve needs a positive interval");
  double prev = 0.0;
  for (double al : alphas) {
    require(std::isfinite(al) && al > prev, "exponents must be positive and strictly increasing");
    prev = al;
  }
  std::vector<double> ex(alphas.begin(), alphas.end());
  return CurveRd(
      [ex](double t) {
        Point p(static_cast<Eigen::Index>(ex.size()));
        for (std::size_t k = 0; k < ex.size(); ++k) p(k) = std::pow(t, ex[k]);
        return p;
      },
      d, Domain::interval(a, b), "power");
}

CurveRd exp_graph(double a, double b) {
  return CurveRd(
      [](double t) {
        Point p(2);
        p << t, std::exp(t);
        return p;
      },
      2, Domain::interval(a, b), "exp");
}

CurveRd sine_graph(double c, double a, double b) {
  return CurveRd(
      [c](double t) {
        Point p(2);
        p << t, std::sin(t) + c;
        return p;
      },
      2, Domain::interval(a, b), "sine");
}

namespace {

// Curve with piecewise-constant radius of curvature over windows of the
// normal angle: x(phi) = x(b_i) + R_i (cos phi - cos b_i, sin phi - sin b_i).
struct NormalAngleCurve {
  std::vector<double> bounds;  // b_0 = 0 < ... < b_K = 2*pi
  std::vector<double> radii;   // one per window
  std::vector<double> px, py;  // position at each bound
  double cx = 0.0, cy = 0.0;

  Point raw(double phi) const {
    phi = Domain::circle().wrap(phi);
    auto it = std::upper_bound(bounds.begin(), bounds.end(), phi);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - bounds.begin() - 1));
    i = std::min(i, radii.size() - 1);
    Point p(2);
    p << px[i] + radii[i] * (std::cos(phi) - std::cos(bounds[i])),
        py[i] + radii[i] * (std::sin(phi) - std::sin(bounds[i]));
    return p;
  }
};

}  // namespace

CurveRd smoothed_polygon(int m, double r) {
  require(m >= 3, "a polygon needs at least 3 sides");
  require(r > 0.0 && std::isfinite(r), "circumradius must be positive");
  const double sector = kTwoPi / m;
  const double apothem = r * std::cos(std::numbers::pi / m);
  const double corner_r = 0.1 * apothem;
  const double flat = 2.0 * (apothem - corner_r) * std::tan(std::numbers::pi / m);
  const double edge_w = 0.05 * sector;
  const double corner_w = sector - edge_w;
  const double edge_r = flat / edge_w;

  // Corners are centred on normal angles j * sector, edges in between.
  NormalAngleCurve c;
  c.bounds.push_back(0.0);
  for (int j = 0; j < m; ++j) {
    const double base = j * sector;
    c.bounds.push_back(base + 0.5 * corner_w);
    c.radii.push_back(corner_r);
    c.bounds.push_back(base + 0.5 * corner_w + edge_w);
    c.radii.push_back(edge_r);
  }
  c.bounds.push_back(kTwoPi);
  c.radii.push_back(corner_r);
  c.px.assign(c.bounds.size(), 0.0);
  c.py.assign(c.bounds.size(), 0.0);
  for (std::size_t i = 0; i + 1 < c.bounds.size(); ++i) {
    c.px[i + 1] = c.px[i] + c.radii[i] * (std::cos(c.bounds[i + 1]) - std::cos(c.bounds[i]));
    c.py[i + 1] = c.py[i] + c.radii[i] * (std::sin(c.bounds[i + 1]) - std::sin(c.bounds[i]));
  }
  // The rotation by one sector about the centre maps the curve to itself, so
  // the mean over the corner midpoints is the centre.
  for (int j = 0; j < m; ++j) {
    const Point p = c.raw(j * sector);
    c.cx += p(0) / m;
    c.cy += p(1) / m;
  }
  std::vector<double> kinks(c.bounds.begin() + 1, c.bounds.end() - 1);
  return CurveRd(
      [c](double phi) {
        Point p = c.raw(phi);
        p(0) -= c.cx;
        p(1) -= c.cy;
        return p;
      },
      2, Domain::circle(), "polygon:" + std::to_string(m), std::move(kinks));
}

namespace {

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      invalid_input("malformed number '" + item + "' in curve description");
    }
  }
  return out;
}

int as_int(double v, const char* what) {
  if (v != std::floor(v)) invalid_input(std::string(what) + " must be an integer");
  return static_cast<int>(v);
}

}  // namespace

CurveRd curve_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<double>{}
                                               : parse_numbers(spec.substr(colon + 1));
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      invalid_input("curve '" + name + "' takes " + std::to_string(n) + " arguments");
    }
  };
  if (name == "moment") {
    need(3);
    return moment_curve(as_int(args[0], "dimension"), args[1], args[2]);
  }
  if (name == "trig") {
    need(1);
    return trig_curve(as_int(args[0], "harmonic count"));
  }
  if (name == "circle") {
    need(0);
    return trig_curve(1);
  }
  if (name == "power") {
    if (args.size() < 3) invalid_input("curve 'power' takes a, b and at least one exponent");
    return power_curve(std::span(args).subspan(2), args[0], args[1]);
  }
  if (name == "exp") {
    if (args.empty()) return exp_graph();
    need(2);
    return exp_graph(args[0], args[1]);
  }
  if (name == "sine") {
    need(3);
    return sine_graph(args[0], args[1], args[2]);
  }
  if (name == "polygon") {
    need(2);
    return smoothed_polygon(as_int(args[0], "side count"), args[1]);
  }
  invalid_input("unknown curve '" + name + "'");
}

double intermediate_radius(const CurveRd& curve, int grid_n) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double t : sample_grid(curve.domain(), grid_n)) {
    const double r = curve(t).norm();
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return 0.5 * (lo + hi);
}

Hyperplane Hyperplane::from(const Point& normal, double offset) {
  const double n = normal.norm();
  require(n > 0.0 && std::isfinite(n), "hyperplane normal must be nonzero");
  return {normal / n, offset / n};
}

namespace {

// Kernel of rows [x^T, -1] / [v^T, 0], returned as a hyperplane.
Hyperplane plane_from_rows(Matrix rows) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double n = rows.row(i).norm();
    if (n > 0) rows.row(i) /= n;
  }
  Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
  const Vector s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= 1e-12 * s(0)) {
    invalid_input("points do not determine a unique hyperplane");
  }
  const Vector v = svd.matrixV().col(rows.cols() - 1);
  const int d = static_cast<int>(rows.cols()) - 1;
  Point normal = v.head(d);
  return Hyperplane::from(normal, v(d));
}

}  // namespace

Hyperplane hyperplane_through(std::span<const Point> pts) {
  require(!pts.empty(), "need at least one point");
  const int d = static_cast<int>(pts[0].size());
  require(static_cast<int>(pts.size()) == d, "need exactly d points in R^d");
  Matrix rows(d, d + 1);
  for (int i = 0; i < d; ++i) {
    rows.row(i).head(d) = pts[i].transpose();
    rows(i, d) = -1.0;
  }
  return plane_from_rows(rows);
}

namespace {

struct Multiplicity {
  int count;
  double shift;
};

// Largest transition count over the unperturbed samples and the shifted ones.
Multiplicity sampled_multiplicity(std::span<const double> values, bool cyclic, double eps) {
  const int base = count_sign_transitions(values, cyclic);
  if (base < 0) return {-1, 0.0};
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double range = *mx - *mn;
  Multiplicity best{base, 0.0};
  std::vector<double> shifted(values.size());
  for (double scale : {eps, eps / 10, eps / 100}) {
    for (double sgn : {1.0, -1.0}) {
      const double delta = sgn * scale * range;
      for (std::size_t i = 0; i < values.size(); ++i) shifted[i] = values[i] - delta;
      const int c = count_sign_transitions(shifted, cyclic);
      if (c > best.count) best = {c, delta};
    }
  }
  return best;
}

// Curve samples as columns.
Matrix sample_curve(const CurveRd& curve, std::span<const double> params) {
  Matrix x(curve.dim(), static_cast<Eigen::Index>(params.size()));
  for (std::size_t i = 0; i < params.size(); ++i) x.col(static_cast<Eigen::Index>(i)) = curve(params[i]);
  return x;
}

std::vector<double> functional_values(const Matrix& x, const Hyperplane& h) {
  const Vector n = h.normal;
  std::vector<double> out(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index i = 0; i < x.cols(); ++i) out[i] = n.dot(x.col(i)) - h.offset;
  return out;
}

// Random distinct parameters, sorted, strictly inside an interval.
std::vector<double> random_params(Rng& rng, const Domain& dom, int k) {
  std::vector<double> t(k);
  for (;;) {
    for (auto& x : t) x = rng.uniform(dom.lo(), dom.hi());
    std::sort(t.begin(), t.end());
    bool ok = dom.is_circle() || t.front() > dom.lo();
    for (int i = 0; i + 1 < k; ++i) ok = ok && t[i + 1] > t[i];
    if (ok) return t;
  }
}

int multiplicity_of(const Func1D& f, const Domain& dom, double eps = kDefaultPerturbation) {
  const auto params = sample_grid(dom, kDefaultGrid);
  std::vector<double> v(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) v[i] = f(params[i]);
  const auto m = sampled_multiplicity(v, dom.is_circle(), eps);
  return m.count < 0 ? static_cast<int>(params.size()) : m.count;
}

}  // namespace

IntersectionCount hyperplane_intersections(const CurveRd& curve, const Hyperplane& h, int grid_n,
                                           double eps) {
  require(static_cast<int>(h.normal.size()) == curve.dim(), "hyperplane dimension mismatch");
  require(eps > 0.0 && eps <= 0.1, "perturbation scale must lie in (0, 0.1]");
  const Func1D s([curve, h](double t) { return h.eval(curve(t)); }, "functional",
                 std::vector<double>(curve.kinks().begin(), curve.kinks().end()));
  IntersectionCount out;
  const auto base = count_sign_changes(s, curve.domain(), grid_n);
  if (base.degenerate) {
    out.degenerate = true;
    out.count_with_multiplicity = grid_n;
    return out;
  }
  out.simple_roots = base.locations;
  const auto params = sample_grid(curve.domain(), grid_n);
  std::vector<double> v(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) v[i] = s(params[i]);
  const auto m = sampled_multiplicity(v, curve.closed(), eps);
  out.count_with_multiplicity = m.count;
  out.perturbation_used = m.shift;

  // Offset shifts only split even-order contacts. Tilting the hyperplane about
  // each crossing also splits odd ones, such as an inflection tangent.
  const Matrix x = sample_curve(curve, params);
  const auto [vmin, vmax] = std::minmax_element(v.begin(), v.end());
  const double vrange = *vmax - *vmin;
  Eigen::HouseholderQR<Matrix> qr(Matrix(h.normal));
  const Matrix q = qr.householderQ();
  std::vector<double> tilted(v.size()), w(v.size());
  const std::size_t max_roots = 16;
  for (std::size_t r = 0; r < std::min(base.locations.size(), max_roots); ++r) {
    const Point x0 = curve(base.locations[r]);
    for (Eigen::Index k = 1; k < q.cols(); ++k) {
      const Vector u = q.col(k);
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = u.dot(x.col(static_cast<Eigen::Index>(i)) - x0);
      const auto [wmin, wmax] = std::minmax_element(w.begin(), w.end());
      const double wrange = *wmax - *wmin;
      if (wrange <= 0.0) continue;
      for (double scale : {eps, eps / 10, eps / 100}) {
        for (double sgn : {1.0, -1.0}) {
          const double delta = sgn * scale * vrange / wrange;
          for (std::size_t i = 0; i < v.size(); ++i) tilted[i] = v[i] + delta * w[i];
          const int c = count_sign_transitions(tilted, curve.closed());
          if (c > out.count_with_multiplicity) {
            out.count_with_multiplicity = c;
            out.perturbation_used = delta;
          }
        }
      }
    }
  }
  return out;
}

ConvexityVerdict convexity_check(const CurveRd& curve, int trials, std::uint64_t seed) {
  require(trials >= 1, "trials must be at least 1");
  const int d = curve.dim();
  const Domain& dom = curve.domain();
  const auto params = sample_grid(dom, kDefaultGrid);
  const Matrix x = sample_curve(curve, params);
  ConvexityVerdict verdict;

  auto probe = [&](const Hyperplane& h) {
    const auto v = functional_values(x, h);
    auto m = sampled_multiplicity(v, curve.closed(), kDefaultPerturbation);
    const int count = m.count < 0 ? static_cast<int>(params.size()) : m.count;
    verdict.max_count_seen = std::max(verdict.max_count_seen, count);
    if (count <= d) return false;
    verdict.status = ChebVerdict::Status::Counterexample;
    verdict.witness = h;
    verdict.witness_count = count;
    return true;
  };

  for (int trial = 0; trial < trials; ++trial) {
    verdict.trials_run = trial + 1;
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(trial));

    const auto dir = rng.unit_vector(d);
    Point n(d);
    for (int k = 0; k < d; ++k) n(k) = dir[k];
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      const double s = n.dot(x.col(i));
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (probe(Hyperplane{n, rng.uniform(lo, hi)})) return verdict;

    std::vector<Point> pts;
    for (double t : random_params(rng, dom, d)) pts.push_back(curve(t));
    try {
      if (probe(hyperplane_through(pts))) return verdict;
    } catch (const Error&) {
      // Affinely dependent sample points; the random probe above still ran.
    }
  }
  return verdict;
}

std::vector<MultiIndex> monomial_multi_indices(int n, int d, bool homogeneous) {
  require(n >= 0, "degree must be nonnegative");
  require(d >= 1, "dimension must be positive");
  std::vector<MultiIndex> out;
  MultiIndex cur(d, 0);
  // Lexicographically decreasing exponent vectors of total degree `deg`.
  std::function<void(int, int)> fill = [&](int pos, int left) {
    if (pos == d - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = e;
      fill(pos + 1, left - e);
    }
  };
  for (int deg = homogeneous ? n : 0; deg <= n; ++deg) fill(0, deg);
  return out;
}

namespace {

double monomial(const Point& x, const MultiIndex& a) {
  double v = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int e = 0; e < a[k]; ++e) v *= x(static_cast<Eigen::Index>(k));
  }
  return v;
}

std::string monomial_label(const MultiIndex& a) {
  std::string s = "x^(";
  for (std::size_t k = 0; k < a.size(); ++k) s += (k ? "," : "") + std::to_string(a[k]);
  return s + ")";
}

std::vector<double> curve_kinks(const CurveRd& c) { return {c.kinks().begin(), c.kinks().end()}; }

}  // namespace

std::vector<Func1D> restrict_polynomials(const CurveRd& curve, int n, bool homogeneous) {
  std::vector<Func1D> out;
  for (const auto& a : monomial_multi_indices(n, curve.dim(), homogeneous)) {
    out.emplace_back([curve, a](double t) { return monomial(curve(t), a); }, monomial_label(a),
                     curve_kinks(curve));
  }
  return out;
}

ConvexChebReport convex_chebyshev_check(const CurveRd& curve, int trials, std::uint64_t seed) {
  const int d = curve.dim();
  const auto basis = restrict_polynomials(curve, 1);
  ConvexChebReport rep;
  rep.rank = dimension_estimate(basis, curve.domain(), std::max(256, 4 * (d + 1)));
  if (rep.rank != d + 1) {
    invalid_input("affine functions restricted to the curve span dimension " +
                  std::to_string(rep.rank) + ", expected " + std::to_string(d + 1) +
                  " (the curve lies in a hyperplane)");
  }
  rep.convexity = convexity_check(curve, trials, seed);
  rep.chebyshev = verify_chebyshev(basis, curve.domain(), trials, seed);
  rep.agree = rep.convexity.passed() == rep.chebyshev.passed();

  // A hyperplane is the affine combination -offset + <normal, x>.
  if (rep.convexity.witness) {
    const auto& h = *rep.convexity.witness;
    std::vector<double> c{-h.offset};
    for (int k = 0; k < d; ++k) c.push_back(h.normal(k));
    const int zeros = multiplicity_of(linear_combination(basis, c), curve.domain());
    rep.witnesses_consistent = rep.witnesses_consistent && zeros > d;
  }
  if (rep.chebyshev.witness_coeffs) {
    const auto& c = *rep.chebyshev.witness_coeffs;
    Point n(d);
    for (int k = 0; k < d; ++k) n(k) = c[k + 1];
    bool ok = n.norm() > 0.0;
    if (ok) {
      const auto ic = hyperplane_intersections(curve, Hyperplane::from(n, -c[0]));
      ok = ic.count_with_multiplicity > d;
    }
    rep.witnesses_consistent = rep.witnesses_consistent && ok;
  }
  return rep;
}

Polynomial Polynomial::constant(int dim, double c) {
  Polynomial p;
  p.dim = dim;
  p.coeffs[MultiIndex(dim, 0)] = c;
  return p;
}

Polynomial Polynomial::linear(const Hyperplane& h) {
  const int d = static_cast<int>(h.normal.size());
  Polynomial p = constant(d, -h.offset);
  for (int k = 0; k < d; ++k) {
    MultiIndex a(d, 0);
    a[k] = 1;
    p.coeffs[a] = h.normal(k);
  }
  return p;
}

double Polynomial::operator()(const Point& x) const {
  double v = 0.0;
  for (const auto& [a, c] : coeffs) v += c * monomial(x, a);
  return v;
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& [a, c] : coeffs) {
    if (c == 0.0) continue;
    int s = 0;
    for (int e : a) s += e;
    deg = std::max(deg, s);
  }
  return deg;
}

Polynomial multiply(const Polynomial& p, const Polynomial& q) {
  require(p.dim == q.dim, "polynomial dimensions differ");
  Polynomial r;
  r.dim = p.dim;
  for (const auto& [a, ca] : p.coeffs) {
    for (const auto& [b, cb] : q.coeffs) {
      MultiIndex s(a);
      for (std::size_t k = 0; k < s.size(); ++k) s[k] += b[k];
      r.coeffs[s] += ca * cb;
    }
  }
  return r;
}

Polynomial polynomial_from_coeffs(int dim, int n, std::span<const double> coeffs,
                                  bool homogeneous) {
  const auto idx = monomial_multi_indices(n, dim, homogeneous);
  require(coeffs.size() == idx.size(), "coefficient count does not match the monomial count");
  Polynomial p;
  p.dim = dim;
  for (std::size_t i = 0; i < idx.size(); ++i) p.coeffs[idx[i]] = coeffs[i];
  return p;
}

double CurveOrthoResult::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, std::abs(r));
  return m;
}

namespace {

std::vector<double> equal_breakpoints(const Domain& dom, int pieces) {
  std::vector<double> bp;
  if (dom.is_circle()) {
    for (int i = 0; i < pieces; ++i) bp.push_back(kTwoPi * i / pieces);
  } else {
    for (int i = 1; i < pieces; ++i) bp.push_back(dom.lo() + dom.length() * i / pieces);
  }
  return bp;
}

int piece_index(double t, std::span<const Piece> pieces, const Domain& dom) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (in_piece(t, pieces[i], dom)) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

CurveOrthoResult construct_orthogonal_on_curve(const CurveRd& curve, int n, int pieces,
                                               const QuadSpec& quad,
                                               std::optional<std::uint64_t> seed) {
  require(pieces >= 2, "need at least two pieces");
  const auto bp = equal_breakpoints(curve.domain(), pieces);
  return construct_orthogonal_on_curve(curve, n, bp, quad, seed);
}

CurveOrthoResult construct_orthogonal_on_curve(const CurveRd& curve, int n,
                                               std::span<const double> breakpoints,
                                               const QuadSpec& quad,
                                               std::optional<std::uint64_t> seed) {
  const Domain& dom = curve.domain();
  validate(quad, dom);
  const auto funcs = restrict_polynomials(curve, n);
  CurveOrthoResult res;
  res.dimension = dimension_estimate(funcs, dom, std::max(512, 4 * static_cast<int>(funcs.size())));
  res.pieces = standard_pieces(dom, breakpoints);
  const auto np = res.pieces.size();
  if (static_cast<int>(np) <= res.dimension) {
    invalid_input("need more than " + std::to_string(res.dimension) +
                  " pieces for a nontrivial kernel, got " + std::to_string(np));
  }

  std::vector<double> kinks = curve_kinks(curve);
  for (const auto& p : res.pieces) kinks.push_back(dom.wrap(p.lo));
  const auto pieces = res.pieces;
  const Func1D bump(
      [pieces, dom](double t) {
        const double u = dom.wrap(t);
        const int i = piece_index(u, pieces, dom);
        if (i < 0) return 0.0;
        double s = u;
        if (s < pieces[i].lo) s += kTwoPi;
        const double v = std::sin(std::numbers::pi * (s - pieces[i].lo) / (pieces[i].hi - pieces[i].lo));
        return v * v;
      },
      "bump", kinks);

  const auto rule = piece_rule(quad, np);
  Matrix a(static_cast<Eigen::Index>(funcs.size()), static_cast<Eigen::Index>(np));
  for (std::size_t j = 0; j < funcs.size(); ++j) {
    const Func1D prod = product(bump, funcs[j]);
    for (std::size_t i = 0; i < np; ++i) {
      a(j, i) = integrate_range(prod, dom, pieces[i].lo, pieces[i].hi, rule.panels, rule.nodes);
    }
  }
  const int rank = numerical_rank(a, 1e-10);
  if (rank < std::min<int>(res.dimension, static_cast<int>(np))) {
    diagnostic("moment matrix rank " + std::to_string(rank) + " is below the space dimension " +
               std::to_string(res.dimension));
  }
  const Matrix kernel = kernel_basis(a, 1e-10);
  res.kernel_dim = static_cast<int>(kernel.cols());
  if (res.kernel_dim == 0) diagnostic("moment matrix has a trivial kernel");

  Vector h;
  if (seed) {
    Rng rng(*seed);
    const auto c = rng.unit_vector(static_cast<std::size_t>(kernel.cols()));
    h = kernel * to_vector(c);
  } else {
    h = smallest_right_singular_vector(a);
  }
  h /= h.norm();
  res.heights = to_std(h);

  const auto heights = res.heights;
  res.function = Func1D(
      [bump, pieces, heights, dom](double t) {
        const int i = piece_index(dom.wrap(t), pieces, dom);
        return i < 0 ? 0.0 : heights[i] * bump(t);
      },
      "orthogonal", kinks);

  for (const auto& fj : funcs) {
    const Func1D prod = product(res.function, fj);
    double r = 0.0;
    for (const auto& p : pieces) r += integrate_range(prod, dom, p.lo, p.hi, 2 * rule.panels, rule.nodes);
    res.residuals.push_back(r);
  }
  if (res.max_residual() > kResidualTol) {
    diagnostic("orthogonality residual " + std::to_string(res.max_residual()) +
               " exceeds tolerance");
  }
  return res;
}

CurveSignReport polynomial_orthogonality_check(const CurveRd& curve, int n, const Func1D& f,
                                               const QuadSpec& quad, double tol) {
  CurveSignReport rep;
  const Domain& dom = curve.domain();
  rep.bound = n * curve.dim() + (curve.closed() ? 2 : 1);
  for (const auto& p : restrict_polynomials(curve, n)) {
    rep.max_residual = std::max(rep.max_residual, std::abs(integrate(product(f, p), dom, quad)));
  }
  const auto sc = count_sign_changes(f, dom);
  if (sc.degenerate) {
    rep.status = CheckStatus::Degenerate;
    return rep;
  }
  if (rep.max_residual > tol) return rep;
  rep.sign_changes = sc.count;
  rep.status = rep.sign_changes >= rep.bound ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

namespace {

double param_distance(double a, double b, const Domain& dom) {
  double d = std::abs(dom.wrap(a) - dom.wrap(b));
  if (dom.is_circle()) d = std::min(d, kTwoPi - d);
  return d;
}

struct ClusterPlane {
  Hyperplane plane;
  double width;  // parameter span of the auxiliary cluster
};

// Hyperplane through `given` (l points) whose remaining d - l conditions come
// from a cluster of points shrinking onto `anchor`. Rows for the cluster are
// the point itself followed by scaled forward differences, which keeps the
// system well conditioned as the spacing shrinks.
ClusterPlane cluster_plane(const CurveRd& curve, std::span<const double> given,
                           double anchor, int cluster_size, std::span<const double> all_zeros) {
  const int d = curve.dim();
  const Domain& dom = curve.domain();
  const auto grid = sample_grid(dom, kDefaultGrid);
  const double h = dom.length() / kDefaultGrid;
  const double excl = 1e-3 * dom.length();

  auto build = [&](double delta) {
    Matrix rows(d, d + 1);
    int r = 0;
    for (double t : given) {
      rows.row(r).head(d) = curve(t).transpose();
      rows(r++, d) = -1.0;
    }
    std::vector<Point> c;
    for (int j = 0; j < cluster_size; ++j) c.push_back(curve(anchor + j * delta));
    std::vector<Point> diff = c;
    for (int k = 0; k < cluster_size; ++k) {
      if (k > 0) {
        for (int j = 0; j + k < cluster_size; ++j) diff[j] = (diff[j + 1] - diff[j]) / delta;
      }
      rows.row(r).head(d) = diff[0].transpose();
      rows(r++, d) = k == 0 ? -1.0 : 0.0;
    }
    return plane_from_rows(rows);
  };
  auto pattern = [&](const Hyperplane& pl, double delta) {
    std::vector<int> s(grid.size(), 0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      bool skip = param_distance(grid[i], anchor, dom) < excl + cluster_size * delta;
      for (double z : all_zeros) skip = skip || param_distance(grid[i], z, dom) < excl;
      if (skip) continue;
      const double v = pl.eval(curve(grid[i]));
      s[i] = v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
    return s;
  };

  double delta = 1e-2 * dom.length();
  ClusterPlane cur{build(delta), (cluster_size - 1) * delta};
  auto prev = pattern(cur.plane, delta);
  for (int it = 0; it < 30; ++it) {
    delta *= 0.5;
    ClusterPlane next{build(delta), (cluster_size - 1) * delta};
    const auto pat = pattern(next.plane, delta);
    int same = 0, flip = 0, both = 0;
    for (std::size_t i = 0; i < pat.size(); ++i) {
      if (pat[i] == 0 || prev[i] == 0) continue;
      ++both;
      same += pat[i] == prev[i];
      flip += pat[i] == -prev[i];
    }
    cur = next;
    prev = pat;
    const bool stable = both > 0 && (same == both || flip == both);
    if (stable && cluster_size * delta < 0.25 * h) break;
  }
  return cur;
}

}  // namespace

SupportProduct support_product_polynomial(const CurveRd& curve,
                                          std::span<const double> zero_points, int group_size) {
  const int d = curve.dim();
  const Domain& dom = curve.domain();
  require(group_size == d, "groups must hold d = " + std::to_string(d) + " points");
  std::vector<double> z(zero_points.begin(), zero_points.end());
  for (double t : z) {
    require(std::isfinite(t), "zero points must be finite");
    if (dom.is_circle()) {
      require(t >= 0.0 && t < kTwoPi, "circle zero points must lie in [0, 2*pi)");
    } else {
      require(t > dom.lo() && t < dom.hi(), "zero points must be interior");
    }
  }
  std::sort(z.begin(), z.end());
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    require(z[i + 1] > z[i], "zero points must be distinct");
  }

  SupportProduct out;
  out.poly = Polynomial::constant(d, 1.0);
  const std::size_t full = z.size() / d;
  const int rem = static_cast<int>(z.size() % d);
  for (std::size_t g = 0; g < full; ++g) {
    std::vector<Point> pts;
    for (int k = 0; k < d; ++k) pts.push_back(curve(z[g * d + k]));
    out.planes.push_back(hyperplane_through(pts));
  }
  double cluster_width = 0.0;
  double anchor = dom.lo();
  if (rem > 0) {
    std::span<const double> group(z.data() + full * d, rem);
    ClusterPlane cp{};
    if (curve.closed()) {
      anchor = group[0];
      cp = cluster_plane(curve, group.subspan(1), anchor, d - rem + 1, z);
    } else {
      cp = cluster_plane(curve, group, anchor, d - rem, z);
    }
    out.planes.push_back(cp.plane);
    cluster_width = cp.width;
  }
  for (const auto& pl : out.planes) out.poly = multiply(out.poly, Polynomial::linear(pl));

  const Polynomial poly = out.poly;
  const Func1D restricted([curve, poly](double t) { return poly(curve(t)); }, "product",
                          curve_kinks(curve));
  out.restricted = count_sign_changes(restricted, dom);
  if (out.restricted.degenerate || out.restricted.count != static_cast<int>(z.size())) {
    diagnostic("product polynomial changes sign " + std::to_string(out.restricted.count) +
               " times along the curve, expected " + std::to_string(z.size()));
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double tol = (curve.closed() && rem > 0 && z[i] == anchor) ? 1e-6 + cluster_width : 1e-6;
    if (param_distance(out.restricted.locations[i], z[i], dom) > tol) {
      diagnostic("product polynomial sign change misplaced near " + std::to_string(z[i]));
    }
  }
  return out;
}

Func1D arc_speed(const CurveRd& curve) {
  const Domain dom = curve.domain();
  const double step = 1e-6 * dom.length();
  return Func1D(
      [curve, dom, step](double t) {
        double lo = t - step, hi = t + step;
        if (!dom.is_circle()) {
          lo = std::max(lo, dom.lo());
          hi = std::min(hi, dom.hi());
        }
        return (curve(hi) - curve(lo)).norm() / (hi - lo);
      },
      "speed", curve_kinks(curve));
}

MassCenter center_of_mass(const CurveRd& curve, const Func1D& rho, const QuadSpec& quad) {
  const Domain& dom = curve.domain();
  const Func1D w = product(rho, arc_speed(curve));
  MassCenter mc;
  mc.mass = integrate(w, dom, quad);
  require(mc.mass != 0.0 && std::isfinite(mc.mass), "density has zero total mass");
  mc.center = Point::Zero(curve.dim());
  for (int k = 0; k < curve.dim(); ++k) {
    const Func1D xk([curve, k](double t) { return curve(t)(k); }, "coord", curve_kinks(curve));
    mc.center(k) = integrate(product(w, xk), dom, quad) / mc.mass;
  }
  return mc;
}

namespace {

void require_positive(const Func1D& f, const Domain& dom, const char* what) {
  for (double t : sample_grid(dom, kDefaultGrid)) {
    if (!(f(t) > 0.0)) invalid_input(std::string(what) + " must be positive on the curve");
  }
}

ExtremaReport extrema_report(const CurveRd& curve, const Func1D& f, const Func1D& g,
                             const QuadSpec& quad, double tol) {
  const Domain& dom = curve.domain();
  require_positive(f, dom, "density");
  require_positive(g, dom, "reference density");
  const auto cf = center_of_mass(curve, f, quad);
  const auto cg = center_of_mass(curve, g, quad);
  ExtremaReport rep;
  rep.bound = curve.dim() + 2;
  rep.center_gap = (cf.center - cg.center).norm();
  const Func1D ratio([f, g](double t) { return f(t) / g(t); }, "ratio",
                     std::vector<double>(f.kinks().begin(), f.kinks().end()));
  const auto ext = count_extrema(ratio, dom);
  if (ext.degenerate) {
    rep.status = CheckStatus::Degenerate;
    return rep;
  }
  if (rep.center_gap > tol) return rep;
  rep.extrema = ext.count;
  const double scale = cf.mass / cg.mass;
  const Func1D diff([f, g, scale](double t) { return f(t) - scale * g(t); });
  rep.difference_sign_changes = count_sign_changes(diff, dom).count;
  rep.status = rep.extrema >= rep.bound ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

}  // namespace

ExtremaReport center_extrema_check(const CurveRd& curve, const Func1D& f, const QuadSpec& quad,
                                   double tol) {
  return extrema_report(curve, f, Func1D::constant(1.0), quad, tol);
}

ExtremaReport center_extrema_check(const CurveRd& curve, const Func1D& f, const Func1D& g,
                                   const QuadSpec& quad, double tol) {
  return extrema_report(curve, f, g, quad, tol);
}

}  // namespace chebz
