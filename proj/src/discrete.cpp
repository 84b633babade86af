#include "chebz/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chebz/error.hpp"
#include "chebz/rng.hpp"

namespace chebz {

void validate(const PolyLine& p) {
  require(p.size() >= 2, "a polyline needs at least two vertices");
  const int d = p.dim();
  require(d >= 1 && d <= kMaxCurveDim, "polyline dimension out of range");
  for (int i = 0; i < p.size(); ++i) {
    require(static_cast<int>(p.vertices[i].size()) == d, "vertices have mixed dimensions");
    require(p.vertices[i].allFinite(), "vertex coordinates must be finite");
  }
  for (int i = 0; i < p.edge_count(); ++i) {
    const auto& a = p.vertices[i];
    const auto& b = p.vertices[(i + 1) % p.size()];
    require((a - b).norm() > 0.0, "consecutive vertices must be distinct");
  }
}

CyclicCount cyclic_sign_changes(std::span<const double> values, bool closed, double tol_rel) {
  require(!values.empty(), "no values to count");
  require(tol_rel >= 0.0, "tolerance must be nonnegative");
  double mx = 0.0;
  for (double v : values) {
    require(std::isfinite(v), "values must be finite");
    mx = std::max(mx, std::abs(v));
  }
  CyclicCount out;
  std::vector<int> signs;
  for (double v : values) {
    if (std::abs(v) > tol_rel * mx) signs.push_back(v > 0 ? 1 : -1);
  }
  if (mx == 0.0 || signs.empty()) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t i = 0; i + 1 < signs.size(); ++i) out.count += signs[i] != signs[i + 1];
  if (closed && signs.size() >= 2) out.count += signs.back() != signs.front();
  return out;
}

int polyline_crossings(const PolyLine& p, const Hyperplane& h) {
  int count = 0;
  for (int i = 0; i < p.edge_count(); ++i) {
    const double a = h.eval(p.vertices[i]);
    const double b = h.eval(p.vertices[(i + 1) % p.size()]);
    count += (a > 0 && b < 0) || (a < 0 && b > 0);
  }
  return count;
}

namespace {

constexpr double kVertexGap = 1e-9;

bool avoids_vertices(const PolyLine& p, const Hyperplane& h) {
  for (const auto& v : p.vertices) {
    if (std::abs(h.eval(v)) <= kVertexGap) return false;
  }
  return true;
}

double diameter(const PolyLine& p) {
  double d = 0.0;
  for (const auto& a : p.vertices) {
    for (const auto& b : p.vertices) d = std::max(d, (a - b).norm());
  }
  return d;
}

double cross2(const Point& u, const Point& v) { return u(0) * v(1) - u(1) * v(0); }

struct TurnTest {
  bool strict_convex = false;
  std::vector<int> reflex;  // vertices turning against the orientation
};

TurnTest turn_test(const PolyLine& p) {
  const int k = p.size();
  TurnTest out;
  std::vector<double> cr(k);
  double area = 0.0, turning = 0.0;
  for (int i = 0; i < k; ++i) {
    const Point& prev = p.vertices[(i + k - 1) % k];
    const Point& cur = p.vertices[i];
    const Point& next = p.vertices[(i + 1) % k];
    const Point u = cur - prev, v = next - cur;
    cr[i] = cross2(u, v);
    turning += std::atan2(cr[i], u.dot(v));
    area += cross2(cur, next);
  }
  const int orient = area >= 0 ? 1 : -1;
  bool strict = true;
  for (int i = 0; i < k; ++i) {
    const Point u = p.vertices[i] - p.vertices[(i + k - 1) % k];
    const Point v = p.vertices[(i + 1) % k] - p.vertices[i];
    const double scale = u.norm() * v.norm();
    if (orient * cr[i] <= 1e-12 * scale) strict = false;
    if (orient * cr[i] < -1e-12 * scale) out.reflex.push_back(i);
  }
  out.strict_convex = strict && std::abs(std::abs(turning) - kTwoPi) < 1e-6;
  return out;
}

// Line parallel to the chord of the neighbours of a reflex vertex, halfway
// between the chord and the vertex.
Hyperplane notch_line(const PolyLine& p, int i) {
  const int k = p.size();
  const Point& a = p.vertices[(i + k - 1) % k];
  const Point& b = p.vertices[(i + 1) % k];
  Point n(2);
  n << -(b(1) - a(1)), b(0) - a(0);
  const double chord = n.dot(a);
  const double tip = n.dot(p.vertices[i]);
  return Hyperplane::from(n, 0.5 * (chord + tip));
}

}  // namespace

PolylineVerdict polyline_convexity_check(const PolyLine& p, int trials, std::uint64_t seed) {
  validate(p);
  require(trials >= 1, "trials must be at least 1");
  const int d = p.dim();
  const double diam = diameter(p);
  PolylineVerdict verdict;

  auto probe = [&](const Hyperplane& h) {
    if (!avoids_vertices(p, h)) return false;
    const int c = polyline_crossings(p, h);
    if (c <= d) return false;
    verdict.status = ChebVerdict::Status::Counterexample;
    verdict.witness = h;
    verdict.witness_count = c;
    return true;
  };

  if (p.closed && d == 2 && p.size() >= 3) {
    const auto tt = turn_test(p);
    verdict.certified_convex = tt.strict_convex;
    for (int i : tt.reflex) {
      if (probe(notch_line(p, i))) return verdict;
    }
  }

  for (int trial = 0; trial < trials; ++trial) {
    verdict.trials_run = trial + 1;
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(trial));

    const auto dir = rng.unit_vector(d);
    Point n(d);
    for (int k = 0; k < d; ++k) n(k) = dir[k];
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& v : p.vertices) {
      lo = std::min(lo, n.dot(v));
      hi = std::max(hi, n.dot(v));
    }
    if (probe(Hyperplane{n, rng.uniform(lo, hi)})) return verdict;

    if (p.edge_count() >= d) {
      std::vector<int> edges(p.edge_count());
      std::iota(edges.begin(), edges.end(), 0);
      std::vector<Point> pts;
      for (int j = 0; j < d; ++j) {
        const std::size_t pick = j + rng.index(edges.size() - j);
        std::swap(edges[j], edges[pick]);
        const int e = edges[j];
        Point mid = 0.5 * (p.vertices[e] + p.vertices[(e + 1) % p.size()]);
        for (int k = 0; k < d; ++k) mid(k) += 1e-3 * diam * rng.normal();
        pts.push_back(mid);
      }
      try {
        if (probe(hyperplane_through(pts))) return verdict;
      } catch (const Error&) {
        // Dependent midpoints; skip this structured probe.
      }
    }
  }
  return verdict;
}

Matrix vandermonde_moment_matrix(const PolyLine& p, int n) {
  validate(p);
  const auto idx = monomial_multi_indices(n, p.dim());
  Matrix v(static_cast<Eigen::Index>(idx.size()), p.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (int i = 0; i < p.size(); ++i) {
      double m = 1.0;
      for (int k = 0; k < p.dim(); ++k) {
        for (int e = 0; e < idx[a][k]; ++e) m *= p.vertices[i](k);
      }
      v(static_cast<Eigen::Index>(a), i) = m;
    }
  }
  return v;
}

MassVector construct_masses(const PolyLine& p, int n, std::uint64_t seed) {
  const Matrix v = vandermonde_moment_matrix(p, n);
  if (p.size() <= v.rows()) {
    invalid_input("need more than " + std::to_string(v.rows()) +
                  " vertices for a nontrivial null space, got " + std::to_string(p.size()));
  }
  const Matrix kernel = kernel_basis(v, 1e-10);
  if (kernel.cols() == 0) invalid_input("moment matrix has a trivial null space");
  Rng rng(seed);
  const auto c = rng.unit_vector(static_cast<std::size_t>(kernel.cols()));
  Vector f = kernel * to_vector(c);
  f /= f.norm();
  const double res = (v * f).cwiseAbs().maxCoeff();
  if (res > kMassResidualTol) {
    diagnostic("mass residual " + std::to_string(res) + " exceeds tolerance");
  }
  return to_std(f);
}

MassSignReport polyline_moment_sign_check(const PolyLine& p, int n, std::span<const double> f,
                                          double tol, int convexity_trials) {
  validate(p);
  require(static_cast<int>(f.size()) == p.size(), "one mass per vertex required");
  MassSignReport rep;
  rep.bound = n * p.dim() + (p.closed ? 2 : 1);
  const Matrix v = vandermonde_moment_matrix(p, n);
  rep.max_residual = (v * to_vector(std::vector<double>(f.begin(), f.end()))).cwiseAbs().maxCoeff();
  if (!polyline_convexity_check(p, convexity_trials, 0).passed()) {
    rep.note = "hypothesis violated: not convex";
    return rep;
  }
  const auto cyc = cyclic_sign_changes(f, p.closed);
  if (cyc.degenerate) {
    rep.status = CheckStatus::Degenerate;
    rep.note = "all masses are zero";
    return rep;
  }
  if (rep.max_residual > tol) {
    rep.note = "masses do not annihilate the polynomials";
    return rep;
  }
  rep.sign_changes = cyc.count;
  rep.status = rep.sign_changes >= rep.bound ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

MassSignReport equal_center_masses_check(const PolyLine& p, std::span<const double> f,
                                         std::span<const double> g, double tol) {
  validate(p);
  require(static_cast<int>(f.size()) == p.size() && static_cast<int>(g.size()) == p.size(),
          "one mass per vertex required");
  for (std::size_t i = 0; i < f.size(); ++i) {
    require(f[i] > 0.0 && g[i] > 0.0, "masses must be positive");
  }
  MassSignReport rep;
  rep.bound = p.dim() + (p.closed ? 2 : 1);
  const double tf = std::accumulate(f.begin(), f.end(), 0.0);
  const double tg = std::accumulate(g.begin(), g.end(), 0.0);
  Point cf = Point::Zero(p.dim()), cg = Point::Zero(p.dim());
  for (int i = 0; i < p.size(); ++i) {
    cf += f[i] * p.vertices[i];
    cg += g[i] * p.vertices[i];
  }
  const double scale = std::max(1.0, tf);
  rep.max_residual = std::max(std::abs(tf - tg), (cf - cg).norm());
  if (rep.max_residual > tol * scale) {
    rep.note = "totals or centers differ";
    return rep;
  }
  std::vector<double> diff(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) diff[i] = f[i] - g[i];
  const auto cyc = cyclic_sign_changes(diff, p.closed);
  if (cyc.degenerate) {
    rep.status = CheckStatus::Degenerate;
    rep.note = "mass vectors coincide";
    return rep;
  }
  rep.sign_changes = cyc.count;
  rep.status = rep.sign_changes >= rep.bound ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

namespace {

// Sorted angles, one per cell of width 2*pi/k, jittered inside the cell, with
// a random rotation. Gaps stay below 1.4 cells, hence below pi.
std::vector<double> jittered_angles(Rng& rng, int k) {
  const double cell = kTwoPi / k;
  const double rot = rng.uniform(0.0, kTwoPi);
  std::vector<double> a(k);
  for (int j = 0; j < k; ++j) a[j] = rot + (j + 0.5 + 0.4 * (rng.uniform() - 0.5)) * cell;
  return a;
}

Point unit(double angle) {
  Point p(2);
  p << std::cos(angle), std::sin(angle);
  return p;
}

// Positive lengths closing the chain of edge directions rot90(n_i): random
// lengths, then a nonnegative correction along the two edge directions that
// bracket the missing vector.
std::vector<double> closing_lengths(Rng& rng, std::span<const double> normal_angles) {
  const std::size_t k = normal_angles.size();
  std::vector<double> len(k);
  Point r = Point::Zero(2);
  std::vector<Point> e;
  for (std::size_t i = 0; i < k; ++i) {
    len[i] = rng.uniform(0.5, 1.5);
    e.push_back(unit(normal_angles[i] + 0.5 * std::numbers::pi));
    r += len[i] * e[i];
  }
  const Point need = -r;
  if (need.norm() == 0.0) return len;
  for (std::size_t i = 0; i < k; ++i) {
    const Point& a = e[i];
    const Point& b = e[(i + 1) % k];
    const double det = cross2(a, b);
    if (det <= 0) continue;
    const double alpha = cross2(need, b) / det;
    const double beta = cross2(a, need) / det;
    if (alpha >= 0 && beta >= 0) {
      len[i] += alpha;
      len[(i + 1) % k] += beta;
      return len;
    }
  }
  diagnostic("no bracketing edge pair closes the polygon");
}

}  // namespace

PolyLine random_convex_polygon(int k, std::uint64_t seed) {
  require(k >= 3, "a polygon needs at least 3 vertices");
  Rng rng(seed);
  // Support function 1 + a2 cos 2(t - p2) + a3 cos 3(t - p3) with
  // 1 - 3 a2 - 8 a3 > 0: a strictly convex curve that is not a conic.
  const double a2 = rng.uniform(0.0, 0.15), p2 = rng.uniform(0.0, kTwoPi);
  const double a3 = rng.uniform(0.0, 0.05), p3 = rng.uniform(0.0, kTwoPi);
  PolyLine poly;
  poly.closed = true;
  for (double t : jittered_angles(rng, k)) {
    const double h = 1 + a2 * std::cos(2 * (t - p2)) + a3 * std::cos(3 * (t - p3));
    const double dh = -2 * a2 * std::sin(2 * (t - p2)) - 3 * a3 * std::sin(3 * (t - p3));
    Point x(2);
    x << h * std::cos(t) - dh * std::sin(t), h * std::sin(t) + dh * std::cos(t);
    poly.vertices.push_back(x);
  }
  return poly;
}

PolyLine polygon_from_normals(std::span<const Point> normals, std::span<const double> lengths) {
  const std::size_t k = normals.size();
  require(k >= 3, "need at least three normals");
  require(lengths.size() == k, "one length per normal required");
  double turn = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    require(normals[i].size() == 2, "normals must be planar");
    require(std::abs(normals[i].norm() - 1.0) <= 1e-9, "normals must have unit length");
    require(lengths[i] > 0.0 && std::isfinite(lengths[i]), "lengths must be positive");
    const Point& a = normals[i];
    const Point& b = normals[(i + 1) % k];
    const double gap = std::atan2(cross2(a, b), a.dot(b));
    require(gap > 0.0, "normals must be sorted counterclockwise with every gap below pi");
    turn += gap;
  }
  require(std::abs(turn - kTwoPi) < 1e-9, "normals must wind around exactly once");
  PolyLine poly;
  poly.closed = true;
  Point x = Point::Zero(2);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    poly.vertices.push_back(x);
    Point e(2);
    e << -normals[i](1), normals[i](0);
    x += lengths[i] * e;
    total += lengths[i];
  }
  if (x.norm() > 1e-9 * std::max(1.0, total)) {
    invalid_input("side data does not close: sum of length * edge direction = " +
                  std::to_string(x.norm()));
  }
  return poly;
}

SideData polygon_sides(const PolyLine& p) {
  validate(p);
  require(p.closed && p.dim() == 2, "side data needs a closed planar polygon");
  SideData s;
  for (int i = 0; i < p.size(); ++i) {
    const Point e = p.vertices[(i + 1) % p.size()] - p.vertices[i];
    const double len = e.norm();
    Point n(2);
    n << e(1) / len, -e(0) / len;
    s.normals.push_back(n);
    s.lengths.push_back(len);
  }
  return s;
}

std::pair<PolyLine, PolyLine> random_shared_fan_pair(int k, std::uint64_t seed) {
  require(k >= 3, "a polygon needs at least 3 sides");
  Rng rng(seed);
  const auto angles = jittered_angles(rng, k);
  std::vector<Point> normals;
  for (double a : angles) normals.push_back(unit(a));
  const auto l1 = closing_lengths(rng, angles);
  auto l2 = closing_lengths(rng, angles);
  const double ratio = std::accumulate(l1.begin(), l1.end(), 0.0) /
                       std::accumulate(l2.begin(), l2.end(), 0.0);
  for (auto& l : l2) l *= ratio;
  return {polygon_from_normals(normals, l1), polygon_from_normals(normals, l2)};
}

SideLengthReport parallel_sides_check(const PolyLine& m1, const PolyLine& m2, double tol) {
  const auto s1 = polygon_sides(m1);
  const auto s2 = polygon_sides(m2);
  for (const PolyLine* m : {&m1, &m2}) {
    const auto v = polyline_convexity_check(*m, 1, 0);
    require(v.passed() && v.certified_convex.value_or(false), "polygons must be strictly convex");
  }
  SideLengthReport rep;
  if (s1.lengths.size() != s2.lengths.size()) {
    rep.note = "normal fans differ: side counts " + std::to_string(s1.lengths.size()) + " and " +
               std::to_string(s2.lengths.size());
    return rep;
  }
  for (std::size_t i = 0; i < s1.normals.size(); ++i) {
    if ((s1.normals[i] - s2.normals[i]).norm() > 1e-9) {
      rep.note = "normal fans differ at side " + std::to_string(i);
      return rep;
    }
  }
  const double p1 = std::accumulate(s1.lengths.begin(), s1.lengths.end(), 0.0);
  const double p2 = std::accumulate(s2.lengths.begin(), s2.lengths.end(), 0.0);
  if (std::abs(p1 - p2) > tol * std::max(1.0, p1)) {
    rep.note = "perimeters differ";
    return rep;
  }
  for (std::size_t i = 0; i < s1.lengths.size(); ++i) {
    rep.differences.push_back(s1.lengths[i] - s2.lengths[i]);
  }
  const auto cyc = cyclic_sign_changes(rep.differences, true);
  PolyLine normal_polygon{s1.normals, true};
  rep.normal_polygon = equal_center_masses_check(normal_polygon, s1.lengths, s2.lengths, tol);
  if (cyc.degenerate) {
    rep.status = CheckStatus::Degenerate;
    rep.note = "side lengths coincide";
    return rep;
  }
  rep.sign_changes = cyc.count;
  rep.status = rep.sign_changes >= rep.bound ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

}  // namespace chebz
