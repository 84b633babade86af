#include <cmath>
#include <numbers>

#include "chebz/chebsys.hpp"
#include "chebz/curves.hpp"
#include "chebz/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chebz;

namespace {

QuadSpec quad(const CurveRd& c) { return QuadSpec::default_for(c.domain()); }

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p(i++) = x;
  return p;
}

// sum_{i=0..n} C(i+d-1, d-1) monomials
int monomial_count(int n, int d) { return static_cast<int>(oracle::binomial(n + d, d)); }

}  // namespace

TEST_CASE("catalog curves") {
  const CurveRd m = moment_curve(3, -1, 2);
  CHECK(m.dim() == 3);
  CHECK_FALSE(m.closed());
  CHECK(m(2.0)(2) == doctest::Approx(8.0));
  const CurveRd t = trig_curve(2);
  CHECK(t.dim() == 4);
  CHECK(t.closed());
  CHECK(t(0.3)(3) == doctest::Approx(std::sin(0.6)));
  CHECK(exp_graph()(0.5)(1) == doctest::Approx(std::exp(0.5)));
  CHECK(sine_graph(2.0, 0, 1)(0.5)(1) == doctest::Approx(2.0 + std::sin(0.5)));
  CHECK(smoothed_polygon(6, 1.0).closed());
  CHECK(trig_curve(1).parity_ok());
}

TEST_CASE("curve specs") {
  CHECK(curve_from_spec("moment:2,-1,1").dim() == 2);
  CHECK(curve_from_spec("trig:3").dim() == 6);
  CHECK(curve_from_spec("circle").closed());
  CHECK(curve_from_spec("power:1,2,1.41421356,1.7320508").dim() == 2);
  CHECK(curve_from_spec("exp").dim() == 2);
  CHECK(curve_from_spec("exp:0,2").domain().hi() == 2.0);
  CHECK(curve_from_spec("sine:10,1,5").dim() == 2);
  CHECK(curve_from_spec("polygon:5,2").closed());
  for (const char* bad : {"moment", "moment:0,0,1", "moment:2,1,0", "trig:0", "blob:1", "polygon:2,1",
                          "moment:9,0,1"}) {
    CHECK_THROWS_AS_MESSAGE(curve_from_spec(bad), Error, bad);
  }
}

TEST_CASE("hyperplane through points") {
  const std::vector<Point> p{pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})};
  const Hyperplane h = hyperplane_through(p);
  for (const auto& x : p) CHECK(std::abs(h.eval(x)) < 1e-14);
  CHECK(h.normal.norm() == doctest::Approx(1.0));
  CHECK(std::abs(h.offset) == doctest::Approx(1 / std::sqrt(3.0)));
  const std::vector<Point> collinear{pt({0, 0}), pt({0, 0})};
  CHECK_THROWS_AS(hyperplane_through(collinear), Error);
}

TEST_CASE("tangent lines count twice") {
  const CurveRd parabola = moment_curve(2, -1, 1);
  const auto tangent = hyperplane_intersections(parabola, Hyperplane::from(pt({0, 1}), 0.0));
  CHECK(tangent.count_with_multiplicity == 2);
  CHECK(tangent.simple_roots.empty());
  CHECK(tangent.perturbation_used != 0.0);
  const auto secant = hyperplane_intersections(parabola, Hyperplane::from(pt({0, 1}), 0.25));
  CHECK(secant.count_with_multiplicity == 2);
  CHECK(secant.simple_roots.size() == 2);
  // (t, t^3) meets the x-axis at an inflection: multiplicity 3.
  const CurveRd cubic([](double t) { return pt({t, t * t * t}); }, 2, Domain::interval(-1, 1));
  CHECK(hyperplane_intersections(cubic, Hyperplane::from(pt({0, 1}), 0.0)).count_with_multiplicity == 3);
}

TEST_CASE("convexity of catalog curves") {
  for (const auto& c : {moment_curve(2, -1, 1), moment_curve(3, 0, 2), trig_curve(1), trig_curve(2),
                        exp_graph(), smoothed_polygon(5, 1.0)}) {
    CHECK_MESSAGE(convexity_check(c, 150, 3).passed(), c.label());
  }
  const auto v = convexity_check(sine_graph(3, 0, 4), 200, 3);
  CHECK_FALSE(v.passed());
  REQUIRE(v.witness.has_value());
  CHECK(v.witness_count > 2);
  CHECK(hyperplane_intersections(sine_graph(3, 0, 4), *v.witness).count_with_multiplicity ==
        v.witness_count);
  // A graph of c sin on an interval shorter than pi is convex.
  CHECK(convexity_check(sine_graph(3, 0.2, 3.0), 200, 3).passed());
}

TEST_CASE("monomial enumeration") {
  const auto idx = monomial_multi_indices(2, 2);
  REQUIRE(idx.size() == 6);
  CHECK(idx[0] == MultiIndex{0, 0});
  CHECK(idx[1] == MultiIndex{1, 0});
  CHECK(idx[2] == MultiIndex{0, 1});
  CHECK(idx[3] == MultiIndex{2, 0});
  CHECK(idx[5] == MultiIndex{0, 2});
  for (int d = 1; d <= 4; ++d) {
    for (int n = 0; n <= 4; ++n) {
      CHECK(static_cast<int>(monomial_multi_indices(n, d).size()) == monomial_count(n, d));
      CHECK(static_cast<int>(monomial_multi_indices(n, d, true).size()) ==
            static_cast<int>(oracle::binomial(n + d - 1, d - 1)));
    }
  }
}

TEST_CASE("restricted polynomial dimensions on moment curves") {
  // On (t, ..., t^d) the degree <= n polynomials restrict to polynomials of
  // degree <= n d, all of which are reached.
  for (int d = 1; d <= 4; ++d) {
    for (int n = 1; n <= 3; ++n) {
      if (n * d > 9) continue;
      const CurveRd c = moment_curve(d, -1, 1);
      const auto basis = restrict_polynomials(c, n);
      CHECK_MESSAGE(dimension_estimate(basis, c.domain(), std::max<int>(1024, 4 * basis.size())) == n * d + 1,
                    "d=" << d << " n=" << n);
    }
  }
  const auto exp6 = restrict_polynomials(exp_graph(), 2);
  CHECK(dimension_estimate(exp6, Domain::interval(-1, 1), 1024) == 6);
  // x^2 + y^2 = 1 on the circle drops one dimension.
  const auto circ = restrict_polynomials(trig_curve(1), 2);
  CHECK(dimension_estimate(circ, Domain::circle(), 1024) == 5);
}

TEST_CASE("affine functions on convex curves form a Chebyshev system") {
  for (const auto& c : {moment_curve(2, -1, 1), trig_curve(1), exp_graph()}) {
    const auto r = convex_chebyshev_check(c, 100, 9);
    CHECK(r.agree);
    CHECK(r.witnesses_consistent);
    CHECK(r.convexity.passed());
    CHECK(r.chebyshev.passed());
    CHECK(r.rank == c.dim() + 1);
  }
  const auto r = convex_chebyshev_check(sine_graph(3, 0, 4), 100, 9);
  CHECK(r.agree);
  CHECK_FALSE(r.convexity.passed());
  CHECK_FALSE(r.chebyshev.passed());
  CHECK(r.witnesses_consistent);
}

TEST_CASE("smoothed hexagon meets the intermediate circle twelve times") {
  const CurveRd k = smoothed_polygon(6, 1.0);
  const double r = intermediate_radius(k);
  const Polynomial circle = polynomial_from_coeffs(2, 2, std::vector<double>{-r * r, 0, 0, 1, 0, 1});
  const oracle::Fn on_k = [&](double t) { return circle(k(t)); };
  CHECK(count_sign_changes(Func1D(on_k, "", {k.kinks().begin(), k.kinks().end()}), k.domain()).count == 12);
  CHECK(oracle::dense_sign_changes(on_k, 0, kTwoPi, true) == 12);
  CHECK_FALSE(verify_chebyshev(restrict_polynomials(k, 2), k.domain(), 300, 1).passed());
}

TEST_CASE("polynomial arithmetic") {
  oracle::Gen gen(51);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = gen.integer(1, 3);
    std::vector<double> a(monomial_count(2, d)), b(monomial_count(1, d));
    for (auto& x : a) x = gen.normal();
    for (auto& x : b) x = gen.normal();
    const Polynomial p = polynomial_from_coeffs(d, 2, a), q = polynomial_from_coeffs(d, 1, b);
    const Polynomial pq = multiply(p, q);
    CHECK(pq.degree() <= 3);
    Point x(d);
    for (int i = 0; i < d; ++i) x(i) = gen.normal();
    CHECK(pq(x) == doctest::Approx(p(x) * q(x)).epsilon(1e-12));
  }
  const Polynomial h = Polynomial::linear(Hyperplane::from(pt({3, 4}), 10));
  CHECK(h(pt({2, 1})) == doctest::Approx((3 * 2 + 4 * 1 - 10) / 5.0));
  CHECK(Polynomial::constant(2, 7)(pt({1, 1})) == 7.0);
}

TEST_CASE("orthogonal functions on curves: residuals by an independent rule") {
  const CurveRd c = moment_curve(2, -1, 1);
  const auto res = construct_orthogonal_on_curve(c, 1, 4, quad(c));
  REQUIRE(res.pieces.size() == 4);
  std::vector<double> breaks;
  for (std::size_t i = 1; i < res.pieces.size(); ++i) breaks.push_back(res.pieces[i].lo);
  for (const auto& a : monomial_multi_indices(1, 2)) {
    const oracle::Fn integrand = [&](double t) {
      const Point x = c(t);
      return res.function(t) * std::pow(x(0), a[0]) * std::pow(x(1), a[1]);
    };
    double s = 0.0;
    std::vector<double> e{-1.0};
    e.insert(e.end(), breaks.begin(), breaks.end());
    e.push_back(1.0);
    for (std::size_t i = 0; i + 1 < e.size(); ++i) s += oracle::simpson(integrand, e[i], e[i + 1], 4000);
    CHECK(std::abs(s) < 1e-10);
  }
  const auto rep = polynomial_orthogonality_check(c, 1, res.function, quad(c));
  CHECK(rep.status == CheckStatus::Pass);
  CHECK(rep.sign_changes == 3);
  CHECK(rep.bound == 3);
}

TEST_CASE("property: orthogonal functions meet the curve bound") {
  oracle::Gen gen(52);
  const std::vector<std::pair<CurveRd, int>> cases{
      {moment_curve(2, -1, 1), 1}, {moment_curve(2, -1, 1), 2}, {moment_curve(3, -1, 1), 1},
      {moment_curve(3, -1, 1), 2}, {trig_curve(1), 1},          {trig_curve(1), 2}};
  for (const auto& [c, n] : cases) {
    const int dim = dimension_estimate(restrict_polynomials(c, n), c.domain(), 1024);
    for (int trial = 0; trial < 8; ++trial) {
      const int pieces = dim + 1 + gen.integer(0, 4);
      const auto res = construct_orthogonal_on_curve(c, n, pieces, quad(c), gen.next());
      const auto rep = polynomial_orthogonality_check(c, n, res.function, quad(c));
      CHECK(rep.status == CheckStatus::Pass);
      CHECK(rep.sign_changes >= n * c.dim() + (c.closed() ? 2 : 1));
      CHECK(rep.max_residual < 1e-8);
    }
  }
}

TEST_CASE("orthogonal construction rejects too few pieces") {
  CHECK_THROWS_AS(construct_orthogonal_on_curve(moment_curve(2, -1, 1), 1, 3, quad(moment_curve(2, -1, 1))),
                  Error);
}

TEST_CASE("support products change sign exactly at the given points") {
  oracle::Gen gen(53);
  const CurveRd c = moment_curve(3, -1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const int k = gen.integer(1, 6);
    const auto pts = gen.spread_points(k, -1, 1, 0.08);
    const auto sp = support_product_polynomial(c, pts, 3);
    REQUIRE(sp.restricted.count == k);
    for (int i = 0; i < k; ++i) CHECK(std::abs(sp.restricted.locations[i] - pts[i]) < 1e-6);
    // Times a function with the same sign changes the integrand keeps one sign.
    const oracle::Fn signed_fn = [&](double t) {
      double v = 1.0;
      for (double x : pts) v *= t - x;
      return v;
    };
    const double i1 = oracle::simpson([&](double t) { return signed_fn(t) * sp.poly(c(t)); }, -1, 1, 8000);
    CHECK(std::abs(i1) > 0.0);
    int neg = 0, pos = 0;
    for (int s = 0; s < 400; ++s) {
      const double t = -1 + 2 * (s + 0.5) / 400;
      const double v = signed_fn(t) * sp.poly(c(t));
      neg += v < -1e-14;
      pos += v > 1e-14;
    }
    CHECK((neg == 0 || pos == 0));
  }
  const std::vector<double> six{0.3, 1.2, 2.0, 3.3, 4.4, 5.5};
  CHECK(support_product_polynomial(trig_curve(2), six, 4).restricted.count == 6);
}

TEST_CASE("center of mass") {
  const CurveRd circle = trig_curve(1);
  const auto mc = center_of_mass(circle, Func1D::constant(1.0), quad(circle));
  CHECK(mc.mass == doctest::Approx(kTwoPi).epsilon(1e-9));
  CHECK(mc.center.norm() < 1e-12);
  const CurveRd seg([](double t) { return pt({t, 0}); }, 2, Domain::interval(0, 1));
  const Func1D lin([](double t) { return t; });
  CHECK(center_of_mass(seg, lin, quad(seg)).center(0) == doctest::Approx(2.0 / 3).epsilon(1e-9));
  CHECK(arc_speed(moment_curve(2, -1, 1))(0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("densities centred like the uniform one have many extrema") {
  const CurveRd circle = trig_curve(1);
  // 1 + 0.3 cos 2t shares the uniform center; four extrema.
  const Func1D f([](double t) { return 1 + 0.3 * std::cos(2 * t); });
  const auto r = center_extrema_check(circle, f, quad(circle));
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.extrema == 4);
  CHECK(r.bound == 4);
  // 1 + 0.3 cos t moves the center.
  const Func1D g([](double t) { return 1 + 0.3 * std::cos(t); });
  CHECK(center_extrema_check(circle, g, quad(circle)).status == CheckStatus::NotApplicable);
  const Func1D neg([](double t) { return std::cos(t); });
  CHECK_THROWS_AS(center_extrema_check(circle, neg, quad(circle)), Error);
  // Relative form with f against itself: the ratio is constant.
  CHECK(center_extrema_check(circle, f, f, quad(circle)).status == CheckStatus::Degenerate);
}
