// Acceptance run: one PASS/FAIL line per criterion. Each criterion runs the
// corresponding harness command and, where a value can be recomputed by other
// means, checks it against an oracle from oracles.hpp.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "chebz/annihilator.hpp"
#include "chebz/chebsys.hpp"
#include "chebz/curves.hpp"
#include "chebz/discrete.hpp"
#include "chebz/fourvertex.hpp"
#include "chebz/orthosynth.hpp"
#include "chebz/runner.hpp"
#include "oracles.hpp"

using namespace chebz;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kHeightFloor = 1e-12;      // min relative height
constexpr double kOrthoTol = 1e-8;          // orthogonality residuals
constexpr double kLocationTol = 1e-6;       // sign-change locations
constexpr double kHandOracleTol = 1e-10;    // (1, 10, 1) heights
constexpr double kMassTol = 1e-10;          // polygon moment residuals
constexpr double kHarmonicTol = 1e-10;      // integrals of R cos, R sin
constexpr double kQuadTol = 1e-12;          // quadrature exactness
constexpr double kTimeLimitSec = 60.0;

struct Outcome {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) why << what;
      else why << "; " << what;
      ok = false;
    }
  }
};

RunReport harness(const std::string& command, std::map<std::string, std::string> options = {}) {
  RunConfig cfg;
  const auto sp = command.find(' ');
  cfg.verb = command.substr(0, sp);
  cfg.subject = command.substr(sp + 1);
  cfg.seed = 1;
  cfg.options = std::move(options);
  return run(cfg);
}

void expect_clean(Outcome& o, const RunReport& r, int min_trials) {
  o.expect(r.error.empty(), r.command + ": " + r.error);
  o.expect(r.fail_count == 0, r.command + ": " + std::to_string(r.fail_count) + " failed");
  o.expect(r.exit_code == 0, r.command + ": exit " + std::to_string(r.exit_code));
  o.expect(r.trials_run >= min_trials, r.command + ": only " + std::to_string(r.trials_run) + " instances");
}

int dense_count(const Func1D& f, const Domain& dom) {
  return oracle::dense_sign_changes([&](double t) { return f(t); }, dom.lo(),
                                    dom.is_circle() ? kTwoPi : dom.hi(), dom.is_circle());
}

double min_rel(const std::vector<double>& h) {
  double mx = 0.0, mn = INFINITY;
  for (double x : h) {
    mx = std::max(mx, std::abs(x));
    mn = std::min(mn, x);
  }
  return mn / mx;
}

// ---------------------------------------------------------------------------

void assertion1(Outcome& o) {
  expect_clean(o, harness("verify assertion1"), 601);
  oracle::Gen gen(101);
  const Domain dom = Domain::interval(-1, 1);
  for (int n = 1; n <= 6; ++n) {
    const Func1D p([n](double x) { return oracle::legendre(n, x); });
    o.expect(dense_count(p, dom) == n, "Legendre P" + std::to_string(n) + " count");
    const ChebSystem sys = polynomial_system(n - 1, dom);
    for (int trial = 0; trial < 10; ++trial) {
      const auto pts = gen.spread_points(n, -1, 1, 0.2 / (n + 1));
      const auto res = synth_orthogonal(sys, pts, QuadSpec::default_for(dom));
      o.expect(dense_count(res.function, dom) >= n, "synthesized count below n");
      // Simpson piece by piece so the rule never straddles a jump.
      std::vector<double> edges{-1.0};
      edges.insert(edges.end(), pts.begin(), pts.end());
      edges.push_back(1.0);
      for (int j = 0; j < n; ++j) {
        double mom = 0.0;
        for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
          const double a = edges[e], b = edges[e + 1], pad = (b - a) * 1e-13;
          mom += oracle::simpson([&](double x) { return res.function(x) * std::pow(x, j); }, a + pad, b - pad,
                                 4000);
        }
        o.expect(std::abs(mom) <= kOrthoTol, "moment by Simpson");
      }
    }
  }
}

void hurwitz(Outcome& o) {
  expect_clean(o, harness("verify hurwitz"), 300);
  for (int n = 1; n <= 3; ++n) {
    std::vector<double> pts;
    for (int i = 0; i < 2 * n + 2; ++i) pts.push_back((i + 0.5) * kTwoPi / (2 * n + 2));
    const auto res = synth_orthogonal(trig_system(n), pts, QuadSpec::default_for(Domain::circle()));
    o.expect(dense_count(res.function, Domain::circle()) == 2 * n + 2, "minimal instance not exact");
    o.expect(res.max_residual() <= kOrthoTol, "minimal instance residual");
  }
}

void constructive_core(Outcome& o) {
  expect_clean(o, harness("verify theorem3-sharpness"), 500);
  // Independent sweep over the catalog.
  oracle::Gen gen(103);
  for (int trial = 0; trial < 60; ++trial) {
    const int kind = trial % 3;
    ChebSystem sys = kind == 0   ? polynomial_system(gen.integer(0, 8), Domain::interval(-1, 1))
                     : kind == 1 ? trig_system(gen.integer(0, 4))
                                 : power_system(std::vector<double>{0.5, 1.5, 2.5}, Domain::interval(0.5, 2));
    const Domain& dom = sys.domain();
    const int m = m_of(dom, sys.order());
    const double lo = dom.lo(), hi = dom.is_circle() ? kTwoPi : dom.hi();
    const auto pts = gen.spread_points(m, lo, hi, 0.25 * (hi - lo) / (m + 1));
    const auto res = synth_orthogonal(sys, pts, QuadSpec::default_for(dom));
    o.expect(min_rel(res.step.heights) > kHeightFloor, "heights not one-signed");
    o.expect(res.max_residual() <= kOrthoTol, "residual");
    o.expect(res.sign_report.count == m, "count");
    for (int i = 0; i < m && i < res.sign_report.count; ++i) {
      o.expect(std::abs(res.sign_report.locations[i] - pts[i]) <= kLocationTol, "location");
    }
  }
  // {1, x} with points -1/3, 1/3: exact moments give heights proportional to (1, 10, 1).
  const Domain dom = Domain::interval(-1, 1);
  const auto res = synth_orthogonal(polynomial_system(1, dom), std::vector<double>{-1.0 / 3, 1.0 / 3},
                                    QuadSpec::default_for(dom));
  const double s = std::sqrt(102.0);
  const double want[3] = {1 / s, 10 / s, 1 / s};
  for (int i = 0; i < 3; ++i) o.expect(std::abs(res.step.heights[i] - want[i]) <= kHandOracleTol, "hand oracle");
}

void convex_curves(Outcome& o) {
  expect_clean(o, harness("verify theorem4"), 50);
  const auto r = convex_chebyshev_check(sine_graph(3, 0, 4), 300, 1);
  o.expect(!r.convexity.passed() && !r.chebyshev.passed(), "long sine graph");
  if (r.convexity.witness) {
    o.expect(hyperplane_intersections(sine_graph(3, 0, 4), *r.convexity.witness).count_with_multiplicity > 2,
             "witness recount");
  }
  const auto ok = convex_chebyshev_check(moment_curve(3, -1, 1), 300, 2);
  o.expect(ok.agree && ok.convexity.passed(), "moment curve");
}

void curve_orthogonality(Outcome& o) {
  expect_clean(o, harness("verify theorem5"), 600);
  // Minimal instances on moment curves, counted by the dense oracle.
  for (int d : {2, 3}) {
    for (int n : {1, 2}) {
      const CurveRd k = moment_curve(d, -1, 1);
      // The restriction is spanned by 1, t, ..., t^(nd).
      const auto res = construct_orthogonal_on_curve(k, n, n * d + 2, QuadSpec::default_for(k.domain()));
      o.expect(res.max_residual() <= kOrthoTol, "moment curve residual");
      o.expect(dense_count(res.function, k.domain()) == n * d + 1, "moment curve minimal count");
    }
  }
  for (int n : {1, 2}) {
    const CurveRd k = trig_curve(1);
    const auto res = construct_orthogonal_on_curve(k, n, 8, QuadSpec::default_for(k.domain()), 9);
    o.expect(dense_count(res.function, k.domain()) >= 2 * n + 2, "trig curve count");
  }
}

void example1(Outcome& o) {
  expect_clean(o, harness("verify example1", {{"m", "6"}}), 3);
  const CurveRd k = smoothed_polygon(6, 1.0);
  const double r = intermediate_radius(k);
  const Func1D on_k([k, r](double t) { const Point x = k(t); return x.squaredNorm() - r * r; });
  o.expect(dense_count(on_k, k.domain()) == 12, "circle crossings");
  o.expect(!verify_chebyshev(restrict_polynomials(k, 2), k.domain(), 500, 1).passed(), "no counterexample");
}

void example6(Outcome& o) {
  expect_clean(o, harness("verify example6"), 20);
  const CurveRd k = exp_graph();
  // Hand-built basis of degree <= 2 in (t, e^t).
  std::vector<Func1D> b{Func1D::constant(1.0), Func1D([](double t) { return t; }),
                        Func1D([](double t) { return std::exp(t); }), Func1D([](double t) { return t * t; }),
                        Func1D([](double t) { return t * std::exp(t); }),
                        Func1D([](double t) { return std::exp(2 * t); })};
  o.expect(dimension_estimate(b, k.domain(), 256) == 6, "dimension");
  const auto res = construct_orthogonal_on_curve(k, 2, 7, QuadSpec::default_for(k.domain()));
  o.expect(dense_count(res.function, k.domain()) >= 6, "sign changes");
}

void polygons(Outcome& o) {
  expect_clean(o, harness("verify theorem6"), 6000);
  // Residuals recomputed with explicit monomials.
  oracle::Gen gen(108);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 2, k = 8 + 4 * (trial % 3);
    const PolyLine p = random_convex_polygon(k, gen.next());
    const auto m = construct_masses(p, n, gen.next());
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; i + j <= n; ++j) {
        double s = 0.0;
        for (int v = 0; v < k; ++v) s += m[v] * std::pow(p.vertices[v](0), i) * std::pow(p.vertices[v](1), j);
        worst = std::max(worst, std::abs(s));
      }
    }
    o.expect(worst <= kMassTol, "moment residual");
    int flips = 0;
    for (int v = 0; v < k; ++v) flips += (m[v] > 0) != (m[(v + 1) % k] > 0);
    o.expect(flips >= 2 * n + 2, "cyclic sign changes");
  }
}

void aleksandrov(Outcome& o) {
  expect_clean(o, harness("verify aleksandrov"), 200);
  auto pt = [](double x, double y) { Point p(2); p << x, y; return p; };
  const std::vector<Point> normals{pt(0, -1), pt(1, 0), pt(0, 1), pt(-1, 0)};
  const std::vector<double> rect{2, 1, 2, 1}, sq{1.5, 1.5, 1.5, 1.5};
  const auto r = parallel_sides_check(polygon_from_normals(normals, rect), polygon_from_normals(normals, sq));
  o.expect(r.status == CheckStatus::Pass && r.sign_changes == 4, "rectangle vs square");
}

void four_vertex(Outcome& o) {
  expect_clean(o, harness("verify fourvertex"), 500);
  expect_clean(o, harness("verify blaschke"), 200);
  OvalSupport e;
  e.coeffs = {{0, 0}, {0.1, 0}};
  o.expect(four_vertex_check(e).extrema == 4, "h = 1 + 0.1 cos 2a");
  // R = 1 - 0.3 cos 2a has four extrema by the dense oracle on R'.
  const Func1D dr([](double a) { return 0.6 * std::sin(2 * a); });
  o.expect(dense_count(dr, Domain::circle()) == 4, "analytic R'");
  oracle::Gen gen(110);
  OvalSupport circle;
  for (int trial = 0; trial < 50; ++trial) {
    const OvalSupport v = random_oval(gen.integer(2, 6), gen.uniform(0.05, 0.9), gen.next());
    const Func1D r = radius_of_curvature(v);
    const double ic = oracle::simpson([&](double a) { return r(a) * std::cos(a); }, 0, kTwoPi, 8000);
    const double is = oracle::simpson([&](double a) { return r(a) * std::sin(a); }, 0, kTwoPi, 8000);
    o.expect(std::abs(ic) <= kHarmonicTol && std::abs(is) <= kHarmonicTol, "harmonic integrals");
    const auto fv = four_vertex_check(v);
    o.expect(fv.extrema >= 4, "fewer than four vertices");
    o.expect(curvature_ratio_check(v, circle).extrema == fv.extrema, "ratio vs circle");
  }
}

void numerics(Outcome& o) {
  oracle::Gen gen(111);
  const Domain c = Domain::circle();
  for (int trial = 0; trial < 50; ++trial) {
    const int deg = gen.integer(0, 40);
    std::vector<double> a(deg + 1), b(deg + 1);
    for (int m = 0; m <= deg; ++m) {
      a[m] = gen.normal();
      b[m] = gen.normal();
    }
    const Func1D f([a, b](double t) {
      double v = 0.0;
      for (std::size_t m = 0; m < a.size(); ++m) v += a[m] * std::cos(m * t) + b[m] * std::sin(m * t);
      return v;
    });
    o.expect(std::abs(integrate(f, c, QuadSpec::default_for(c)) - kTwoPi * a[0]) <= kQuadTol, "trig exactness");
  }
  for (int trial = 0; trial < 50; ++trial) {
    const Domain dom = Domain::interval(-1.0, gen.uniform(0.5, 3.0));
    const auto kinks = gen.spread_points(3, dom.lo(), dom.hi(), 0.05);
    std::vector<std::array<double, 4>> cf(4);
    for (auto& p : cf) {
      for (auto& x : p) x = gen.normal();
    }
    auto piece = [kinks](double t) {
      int i = 0;
      while (i < 3 && t >= kinks[i]) ++i;
      return i;
    };
    const Func1D f([cf, piece](double t) {
      const auto& p = cf[piece(t)];
      return p[0] + t * (p[1] + t * (p[2] + t * p[3]));
    }, "pieces", kinks);
    std::vector<double> edges{dom.lo(), kinks[0], kinks[1], kinks[2], dom.hi()};
    double exact = 0.0;
    for (int i = 0; i < 4; ++i) {
      const auto& p = cf[i];
      auto anti = [&](double t) { return t * (p[0] + t * (p[1] / 2 + t * (p[2] / 3 + t * p[3] / 4))); };
      exact += anti(edges[i + 1]) - anti(edges[i]);
    }
    o.expect(std::abs(integrate(f, dom, QuadSpec::gauss(8, 8)) - exact) <= kQuadTol, "piecewise exactness");
  }
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool circle = trial % 2 == 1;
    const Domain dom = circle ? Domain::circle() : Domain::interval(-1, gen.uniform(0.0, 2.0));
    const int terms = gen.integer(1, 8);
    std::vector<double> amp(terms), freq(terms), phase(terms);
    for (int j = 0; j < terms; ++j) {
      amp[j] = gen.normal();
      freq[j] = circle ? gen.integer(0, 9) : gen.uniform(0.0, 12.0);
      phase[j] = gen.uniform(0.0, kTwoPi);
    }
    const Func1D f([=](double t) {
      double v = 0.0;
      for (int j = 0; j < terms; ++j) v += amp[j] * std::cos(freq[j] * t + phase[j]);
      return v;
    });
    agree += count_sign_changes(f, dom).count == dense_count(f, dom);
  }
  o.expect(agree == 200, std::to_string(200 - agree) + " of 200 disagree with the dense oracle");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"interval moments force n sign changes, Legendre sharp", assertion1},
      {"trigonometric orthogonality forces 2n+2 sign changes", hurwitz},
      {"step-weight synthesis: one-signed heights, residuals, locations", constructive_core},
      {"curve convexity agrees with the affine Chebyshev property", convex_curves},
      {"orthogonal functions on convex curves", curve_orthogonality},
      {"smoothed hexagon meets a circle 12 times", example1},
      {"exponential graph: dimension 6, six sign changes", example6},
      {"polygon mass vectors change sign 2n+2 times", polygons},
      {"parallel-sided polygons: four side-difference changes", aleksandrov},
      {"four vertices and curvature ratios of ovals", four_vertex},
      {"quadrature exactness and sign-counting agreement", numerics},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.expect(sec < kTimeLimitSec, "took longer than 60 s");
    failed += !o.ok;
    std::printf("%s %2zu %s (%.1f s)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), sec,
                o.ok ? "" : ": ", o.ok ? "" : o.why.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
