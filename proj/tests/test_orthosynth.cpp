#include <cmath>
#include <numbers>

#include "chebz/annihilator.hpp"
#include "chebz/error.hpp"
#include "chebz/orthosynth.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chebz;
constexpr double kPi = std::numbers::pi;

namespace {

QuadSpec quad(const Domain& d) { return QuadSpec::default_for(d); }

// <F, f_j> by Simpson on each piece, splitting at the breakpoints so the
// rule never straddles a jump of the step weight.
double simpson_moment(const Func1D& f, const Func1D& fj, const Domain& dom,
                      std::span<const double> breaks) {
  std::vector<double> edges{dom.lo()};
  for (double b : breaks) edges.push_back(b);
  edges.push_back(dom.is_circle() ? kTwoPi : dom.hi());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    s += oracle::simpson([&](double t) { return f(t) * fj(t); }, a + (b - a) * 1e-13,
                         b - (b - a) * 1e-13, 4000);
  }
  return s;
}

}  // namespace

TEST_CASE("required sign-change count") {
  CHECK(m_of(Domain::interval(0, 1), 4) == 4);
  CHECK(m_of(Domain::circle(), 5) == 6);
  CHECK_THROWS_AS(m_of(Domain::circle(), 4), Error);
  CHECK_THROWS_AS(m_of(Domain::interval(0, 1), 0), Error);
}

TEST_CASE("standard pieces") {
  const std::vector<double> b{0.5, 2.0};
  const auto iv = standard_pieces(Domain::interval(0, 3), b);
  REQUIRE(iv.size() == 3);
  CHECK(iv[0].lo == 0.0);
  CHECK(iv[2].hi == 3.0);
  const auto c = standard_pieces(Domain::circle(), b);
  REQUIRE(c.size() == 2);
  CHECK(c[1].lo == 2.0);
  CHECK(c[1].hi == doctest::Approx(0.5 + kTwoPi));
  CHECK(in_piece(0.2, c[1], Domain::circle()));
  CHECK_FALSE(in_piece(1.0, c[1], Domain::circle()));
  const std::vector<double> unsorted{1.0, 0.5};
  CHECK_THROWS_AS(standard_pieces(Domain::interval(0, 3), unsorted), Error);
}

TEST_CASE("hand oracle: {1, x} with sign changes at -1/3 and 1/3") {
  // g = x^2 - 1/9 on (-1,-1/3), (-1/3,1/3), (1/3,1). Antiderivatives of g and
  // x g give the 2 x 3 moment matrix exactly; its kernel is the cross product
  // of the two rows.
  auto G = [](double x) { return x * x * x / 3 - x / 9; };
  auto XG = [](double x) { return x * x * x * x / 4 - x * x / 18; };
  const double e[] = {-1.0, -1.0 / 3, 1.0 / 3, 1.0};
  double r0[3], r1[3];
  for (int i = 0; i < 3; ++i) {
    r0[i] = G(e[i + 1]) - G(e[i]);
    r1[i] = XG(e[i + 1]) - XG(e[i]);
  }
  double k[3] = {r0[1] * r1[2] - r0[2] * r1[1], r0[2] * r1[0] - r0[0] * r1[2],
                 r0[0] * r1[1] - r0[1] * r1[0]};
  const double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) * (k[0] < 0 ? -1 : 1);
  for (double& x : k) x /= kn;
  CHECK(k[1] / k[0] == doctest::Approx(10.0).epsilon(1e-12));

  const Domain dom = Domain::interval(-1, 1);
  const std::vector<double> pts{-1.0 / 3, 1.0 / 3};
  const auto res = synth_orthogonal(polynomial_system(1, dom), pts, quad(dom));
  REQUIRE(res.step.heights.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(res.step.heights[i] - k[i]) < 1e-10);
  CHECK(res.sign_report.count == 2);
  CHECK(res.max_residual() < 1e-12);
}

TEST_CASE("trig:1 with quarter-turn points has equal heights") {
  const std::vector<double> pts{0.0, kPi / 2, kPi, 3 * kPi / 2};
  const auto res = synth_orthogonal(trig_system(1), pts, quad(Domain::circle()));
  REQUIRE(res.step.heights.size() == 4);
  for (double h : res.step.heights) CHECK(h == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(res.max_residual() < 1e-8);
  CHECK(res.sign_report.count == 4);
}

TEST_CASE("prescription size must match m") {
  const std::vector<double> three{-0.5, 0.0, 0.5};
  CHECK_THROWS_AS(synth_orthogonal(polynomial_system(1, Domain::interval(-1, 1)), three,
                                   quad(Domain::interval(-1, 1))),
                  Error);
}

TEST_CASE("property: synthesized functions are orthogonal with prescribed sign changes") {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 60; ++trial) {
    const bool circle = trial % 3 == 2;
    const ChebSystem sys = circle ? trig_system(gen.integer(0, 3))
                                  : polynomial_system(gen.integer(0, 6), Domain::interval(-1, gen.uniform(0, 1.5)));
    const Domain& dom = sys.domain();
    const int m = m_of(dom, sys.order());
    const double len = circle ? kTwoPi : dom.length();
    auto pts = circle ? gen.spread_points(m, 0.0, kTwoPi, 0.1 * len / m)
                      : gen.spread_points(m, dom.lo(), dom.hi(), 0.1 * len / (m + 1));
    const auto res = synth_orthogonal(sys, pts, quad(dom));
    double mx = 0.0;
    for (double h : res.step.heights) mx = std::max(mx, h);
    for (double h : res.step.heights) CHECK(h > 1e-12 * mx);
    REQUIRE(res.sign_report.count == m);
    for (int i = 0; i < m; ++i) CHECK(std::abs(res.sign_report.locations[i] - pts[i]) < 1e-6);
    for (const auto& fj : sys.basis()) {
      CHECK(std::abs(simpson_moment(res.function, fj, dom, pts)) < 1e-8);
    }
  }
}

TEST_CASE("weight for sin 2x against trig:1") {
  const Func1D f([](double t) { return std::sin(2 * t); });
  const auto res = synth_weight(trig_system(1), f, quad(Domain::circle()));
  CHECK_FALSE(res.narrowed);
  REQUIRE(res.step.heights.size() == 4);
  for (double h : res.step.heights) CHECK(h == doctest::Approx(res.step.heights[0]).epsilon(1e-8));
  CHECK(res.max_residual() < 1e-10);
  for (double t : sample_grid(Domain::circle(), 512)) CHECK(res.function(t) >= 0.0);
}

TEST_CASE("weight for the second Legendre polynomial against {1, x}") {
  const Domain dom = Domain::interval(-1, 1);
  const Func1D p2([](double x) { return oracle::legendre(2, x); });
  const auto res = synth_weight(polynomial_system(1, dom), p2, quad(dom));
  CHECK(res.max_residual() < 1e-10);
  // Symmetry: outer heights agree.
  CHECK(res.step.heights[0] == doctest::Approx(res.step.heights[2]).epsilon(1e-8));
  const auto check = weighted_orthogonality_check(polynomial_system(1, dom), p2, res.function,
                                                  quad(dom), 1e-8);
  CHECK(check.status == CheckStatus::Pass);
  CHECK(check.sign_changes == 2);
}

TEST_CASE("narrowing: sin 3x has six sign changes, trig:1 needs four") {
  const Func1D f([](double t) { return std::sin(3 * t); });
  const auto res = synth_weight(trig_system(1), f, quad(Domain::circle()));
  CHECK(res.narrowed);
  CHECK(res.max_residual() < 1e-10);
  // Arc (x0, x4) kept; the rest of the circle carries no weight.
  const auto& x = res.sign_report.locations;
  REQUIRE(x.size() == 6);
  for (double t = x[4] + 0.01; t < kTwoPi + x[0] - 0.01; t += 0.05) {
    CHECK(res.function(Domain::circle().wrap(t)) == 0.0);
  }
  double inside = 0.0;
  for (double t = x[0] + 0.01; t < x[4]; t += 0.05) inside = std::max(inside, res.function(t));
  CHECK(inside > 0.0);
}

TEST_CASE("weight needs enough sign changes") {
  const Domain dom = Domain::interval(-1, 1);
  const Func1D x([](double t) { return t; });
  try {
    synth_weight(polynomial_system(2, dom), x, quad(dom));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("property: weighted sweeps satisfy the sign-change bound") {
  oracle::Gen gen(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int deg = gen.integer(0, 7);
    const Domain dom = Domain::interval(-1, 1);
    const ChebSystem sys = polynomial_system(deg, dom);
    const int q = deg + 1 + gen.integer(0, 3);
    const auto roots = gen.spread_points(q, -1, 1, 0.3 / (q + 1));
    const Func1D g = poly_annihilator(roots, dom);
    const double w = gen.uniform(1, 4);
    const Func1D f([g, w](double t) { return g(t) * (1.5 + std::sin(w * t)); });
    const auto res = synth_weight(sys, f, quad(dom));
    const auto rep = weighted_orthogonality_check(sys, f, res.function, quad(dom), 1e-8);
    CHECK(rep.status == CheckStatus::Pass);
    CHECK(rep.sign_changes >= deg + 1);
    CHECK(res.narrowed == (q > deg + 1));
  }
}

TEST_CASE("weighted check statuses") {
  const Domain dom = Domain::interval(-1, 1);
  const ChebSystem sys = polynomial_system(1, dom);
  const Func1D one = Func1D::constant(1.0);
  CHECK(weighted_orthogonality_check(sys, one, one, quad(dom), 1e-8).status == CheckStatus::NotApplicable);
  CHECK(weighted_orthogonality_check(sys, Func1D::constant(0.0), one, quad(dom), 1e-8).status ==
        CheckStatus::Degenerate);
  const Func1D p3([](double x) { return oracle::legendre(3, x); });
  const auto r = weighted_orthogonality_check(polynomial_system(2, dom), p3, one, quad(dom), 1e-10);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.sign_changes == 3);
  CHECK(r.bound == 3);
}

TEST_CASE("null direction") {
  Matrix a(1, 2);
  a << 1.0, -2.0;
  const Vector p = null_direction(a);
  CHECK(p(0) > 0);
  CHECK(p(1) / p(0) == doctest::Approx(0.5));
  Matrix z = Matrix::Zero(2, 3);
  CHECK_THROWS_AS(null_direction(z), Error);
  Matrix wrong(2, 2);
  wrong.setIdentity();
  CHECK_THROWS_AS(null_direction(wrong), Error);
}
