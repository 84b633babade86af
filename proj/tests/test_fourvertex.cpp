#include <cmath>
#include <sstream>

#include "chebz/curves.hpp"
#include "chebz/error.hpp"
#include "chebz/fourvertex.hpp"
#include "chebz/textio.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chebz;

namespace {

OvalSupport oval(double h0, std::vector<std::array<double, 2>> c) {
  OvalSupport o;
  o.h0 = h0;
  o.coeffs = std::move(c);
  return o;
}

}  // namespace

TEST_CASE("support function derivatives and radius of curvature") {
  // h = 1 + 0.1 cos 2a  =>  R = h + h'' = 1 - 0.3 cos 2a.
  const OvalSupport o = oval(1.0, {{0, 0}, {0.1, 0}});
  const Func1D r = radius_of_curvature(o);
  for (double a = 0; a < kTwoPi; a += 0.1) {
    CHECK(o.h(a) == doctest::Approx(1 + 0.1 * std::cos(2 * a)));
    CHECK(o.dh(a) == doctest::Approx(-0.2 * std::sin(2 * a)));
    CHECK(r(a) == doctest::Approx(1 - 0.3 * std::cos(2 * a)).epsilon(1e-14));
  }
  CHECK_FALSE(o.is_circle());
  // A first harmonic only translates the circle.
  CHECK(oval(2.0, {{0.5, -0.3}}).is_circle());
}

TEST_CASE("validation rejects non-convex support functions") {
  CHECK_NOTHROW(validate(oval(1.0, {{0, 0}, {0.2, 0}})));
  CHECK_THROWS_AS(validate(oval(1.0, {{0, 0}, {0.5, 0}})), Error);
  CHECK_THROWS_AS(validate(oval(-1.0, {})), Error);
}

TEST_CASE("the ellipse-like oval has exactly four vertices") {
  const auto r = four_vertex_check(oval(1.0, {{0, 0}, {0.1, 0}}));
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.extrema == 4);
  CHECK(r.bound == 4);
  const auto r3 = four_vertex_check(oval(1.0, {{0, 0}, {0, 0}, {0.05, 0}}));
  CHECK(r3.extrema == 6);
}

TEST_CASE("a circle has constant curvature") {
  CHECK(four_vertex_check(oval(1.0, {})).status == CheckStatus::Degenerate);
}

TEST_CASE("radius of curvature is orthogonal to cos and sin") {
  const auto res = verify_R_orthogonality(oval(1.0, {{0.3, 0.2}, {0.1, -0.05}, {0.01, 0.02}}),
                                          QuadSpec::default_for(Domain::circle()));
  CHECK(res.max_abs() <= 1e-12);
}

TEST_CASE("property: random ovals") {
  oracle::Gen gen(71);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = gen.integer(2, 7);
    const double amp = gen.uniform(0.0, 0.95);
    const OvalSupport o = random_oval(m, amp, gen.next());
    CHECK_NOTHROW(validate(o));
    const Func1D r = radius_of_curvature(o);
    for (double a : sample_grid(Domain::circle(), 256)) CHECK(r(a) > 0.0);
    // Same integrals by Simpson, independently of the library's quadrature.
    const double ic = oracle::simpson([&](double a) { return r(a) * std::cos(a); }, 0, kTwoPi, 4000);
    const double is = oracle::simpson([&](double a) { return r(a) * std::sin(a); }, 0, kTwoPi, 4000);
    CHECK(std::abs(ic) < 1e-10);
    CHECK(std::abs(is) < 1e-10);
    const auto v = four_vertex_check(o);
    if (v.status == CheckStatus::Degenerate) continue;
    CHECK(v.status == CheckStatus::Pass);
    CHECK(v.extrema >= 4);
    CHECK(v.extrema % 2 == 0);
    CHECK(curvature_ratio_check(o, oval(1.0, {})).extrema == v.extrema);
  }
}

TEST_CASE("property: curvature ratios of two ovals") {
  oracle::Gen gen(72);
  for (int trial = 0; trial < 100; ++trial) {
    const OvalSupport a = random_oval(gen.integer(2, 6), gen.uniform(0.05, 0.9), gen.next());
    const OvalSupport b = random_oval(gen.integer(2, 6), gen.uniform(0.05, 0.9), gen.next());
    const auto r = curvature_ratio_check(a, b);
    CHECK(r.status == CheckStatus::Pass);
    CHECK(r.extrema >= 4);
  }
  CHECK(curvature_ratio_check(oval(1, {{0, 0}, {0.1, 0}}), oval(1, {})).note.find("circle") !=
        std::string::npos);
}

TEST_CASE("random ovals are reproducible and bounded") {
  const OvalSupport a = random_oval(4, 0.5, 3), b = random_oval(4, 0.5, 3);
  REQUIRE(a.coeffs.size() == 4);
  CHECK(a.coeffs == b.coeffs);
  double w = 0.0;
  for (std::size_t m = 0; m < a.coeffs.size(); ++m) {
    w += (m + 1) * (m + 1) * (std::abs(a.coeffs[m][0]) + std::abs(a.coeffs[m][1]));
  }
  CHECK(w == doctest::Approx(0.5));
  CHECK_THROWS_AS(random_oval(1, 0.5, 1), Error);
  CHECK_THROWS_AS(random_oval(3, 1.0, 1), Error);
}

TEST_CASE("ovals as curves are closed and convex") {
  const CurveRd c = oval_to_curve(random_oval(3, 0.6, 8));
  CHECK(c.closed());
  CHECK(c.dim() == 2);
  CHECK(convexity_check(c, 200, 4).passed());
}

TEST_CASE("oval text round trip") {
  const OvalSupport o = random_oval(5, 0.4, 11);
  std::stringstream ss;
  write_oval(ss, o);
  const OvalSupport p = read_oval(ss);
  CHECK(p.h0 == o.h0);
  CHECK(p.coeffs == o.coeffs);
  std::istringstream gap("# ellipse-like\n1\n2 0.1 0\n");
  const OvalSupport q = read_oval(gap);
  REQUIRE(q.coeffs.size() == 2);
  CHECK(q.coeffs[0] == std::array<double, 2>{0, 0});
  std::istringstream bad("1\n2 0.9 0\n");
  CHECK_THROWS_AS(read_oval(bad), Error);
}
