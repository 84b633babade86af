#include <cmath>
#include <numbers>

#include "chebz/annihilator.hpp"
#include "chebz/chebsys.hpp"
#include "chebz/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chebz;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("catalog systems have the expected orders and domains") {
  CHECK(polynomial_system(4, Domain::interval(-1, 1)).order() == 5);
  CHECK(trig_system(3).order() == 7);
  CHECK(trig_system(3).domain().is_circle());
  const double a[] = {0.5, 1.5};
  CHECK(power_system(a, Domain::interval(1, 2)).order() == 3);
  CHECK(kind_of([] { polynomial_system(2, Domain::circle()); }) == ErrorKind::InvalidInput);
  const double bad[] = {1.0, 0.5};
  CHECK(kind_of([&] { power_system(bad, Domain::interval(1, 2)); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([&] { power_system(a, Domain::interval(-1, 2)); }) == ErrorKind::InvalidInput);
  // Even order on the circle cannot be Chebyshev.
  std::vector<Func1D> two{Func1D::constant(1.0), Func1D([](double t) { return std::cos(t); })};
  CHECK(kind_of([&] { ChebSystem(two, Domain::circle()); }) == ErrorKind::InvalidInput);
}

TEST_CASE("system specs") {
  CHECK(system_from_spec("poly:3").order() == 4);
  CHECK(system_from_spec("poly:3").domain() == Domain::interval(-1, 1));
  CHECK(system_from_spec("poly:2", Domain::interval(0, 5)).domain().hi() == 5.0);
  CHECK(system_from_spec("trig:2").order() == 5);
  CHECK(system_from_spec("power:0.5,1.5").domain() == Domain::interval(1, 2));
  for (const char* bad : {"poly", "poly:-1", "poly:x", "trig:1.5", "wave:3", "power:"}) {
    CHECK_MESSAGE(kind_of([&] { system_from_spec(bad); }) == ErrorKind::InvalidInput, bad);
  }
}

TEST_CASE("vandermonde collocation determinant matches the product formula") {
  oracle::Gen gen(21);
  const ChebSystem sys = polynomial_system(4, Domain::interval(-2, 2));
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = gen.spread_points(5, -2, 2, 0.05);
    double expected = 1.0;
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) expected *= x[j] - x[i];
    }
    const Matrix m = collocation_matrix(sys, x);
    // Rows are points, columns basis functions, or the transpose: the determinant is the same.
    CHECK(m.determinant() == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("catalog systems pass the randomized Chebyshev probes") {
  CHECK(verify_chebyshev(polynomial_system(5, Domain::interval(-1, 1)), 200, 1).passed());
  CHECK(verify_chebyshev(trig_system(2), 200, 2).passed());
  const double a[] = {std::sqrt(2.0), std::sqrt(3.0), 2.5};
  CHECK(verify_chebyshev(power_system(a, Domain::interval(0.5, 2)), 200, 3).passed());
}

TEST_CASE("non-Chebyshev spans are caught with a witness") {
  // {1, x^2} on a symmetric interval: x^2 - c has two zeros.
  std::vector<Func1D> even{Func1D::constant(1.0), Func1D([](double t) { return t * t; })};
  const auto v = verify_chebyshev(ChebSystem(even, Domain::interval(-1, 1)), 200, 4);
  CHECK_FALSE(v.passed());
  REQUIRE(v.witness_zero_count.has_value());
  CHECK(*v.witness_zero_count >= 2);
  CHECK(v.witness_coeffs.has_value());

  // {1, cos 2t, sin 2t} on the circle: cos 2t already has four zeros.
  std::vector<Func1D> second{Func1D::constant(1.0), Func1D([](double t) { return std::cos(2 * t); }),
                             Func1D([](double t) { return std::sin(2 * t); })};
  CHECK_FALSE(verify_chebyshev(second, Domain::circle(), 200, 5).passed());

  // Even-dimensional span on the circle via the span overload.
  std::vector<Func1D> pair{Func1D([](double t) { return std::cos(t); }),
                           Func1D([](double t) { return std::sin(t); })};
  CHECK_FALSE(verify_chebyshev(pair, Domain::circle(), 100, 6).passed());
}

TEST_CASE("verification is reproducible for a seed") {
  std::vector<Func1D> even{Func1D::constant(1.0), Func1D([](double t) { return t * t; })};
  const ChebSystem s(even, Domain::interval(-1, 1));
  const auto a = verify_chebyshev(s, 100, 77), b = verify_chebyshev(s, 100, 77);
  CHECK(a.probe == b.probe);
  CHECK(a.witness_zeros == b.witness_zeros);
}

TEST_CASE("dimension estimate") {
  const Domain dom = Domain::interval(-1, 1);
  std::vector<Func1D> f{Func1D::constant(1.0), Func1D([](double t) { return t; }),
                        Func1D([](double t) { return t * t; }),
                        Func1D([](double t) { return (1 + t) * (1 + t); })};
  CHECK(dimension_estimate(f, dom, 256) == 3);
  CHECK(dimension_estimate(polynomial_system(6, dom).basis(), dom, 256) == 7);
  CHECK(dimension_estimate(trig_system(3).basis(), Domain::circle(), 256) == 7);
  CHECK(kind_of([&] { dimension_estimate(f, dom, 8); }) == ErrorKind::InvalidInput);
}

TEST_CASE("natural annihilators vanish exactly at their roots") {
  const Domain dom = Domain::interval(0, 4);
  const std::vector<double> r{0.5, 1.0, 3.0};
  const Func1D p = poly_annihilator(r, dom);
  for (double x : r) CHECK(p(x) == 0.0);
  CHECK(p(2.0) == doctest::Approx((2 - 0.5) * (2 - 1) * (2 - 3)));
  const auto rep = count_sign_changes(p, dom);
  CHECK(rep.count == 3);

  const std::vector<double> c{0.3, 2.0, 4.0, 5.5};
  const Func1D t = natural_annihilator(c, Domain::circle());
  CHECK(count_sign_changes(t, Domain::circle()).count == 4);
  CHECK(std::abs(t(2.0)) < 1e-15);

  CHECK(kind_of([] { natural_annihilator(std::vector<double>{1.0, 2.0, 3.0}, Domain::circle()); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([&] { poly_annihilator(std::vector<double>{1.0, 1.0}, dom); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([&] { poly_annihilator(std::vector<double>{5.0}, dom); }) == ErrorKind::InvalidInput);
}

TEST_CASE("general annihilator realizes simple and double roots") {
  const ChebSystem sys = polynomial_system(5, Domain::interval(-1, 1));
  RootPrescription rp{{-0.5, 0.6}, {0.1}};
  REQUIRE(rp.feasible_for(sys.order()));
  const auto res = general_annihilator(sys, rp);
  CHECK(res.sign_report.count == 2);
  CHECK(std::abs(res.combination(0.1)) < 1e-9);
  CHECK(std::abs(res.combination(-0.5)) < 1e-9);
  double norm = 0.0;
  for (double c : res.coeffs) norm += c * c;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.min_abs_away > 0.0);

  RootPrescription too_many{{-0.5, 0.0, 0.5}, {0.2}};
  CHECK_FALSE(too_many.feasible_for(4));
  CHECK(kind_of([&] { general_annihilator(polynomial_system(3, Domain::interval(-1, 1)), too_many); }) ==
        ErrorKind::InvalidInput);
}

TEST_CASE("general annihilator on the circle") {
  const auto res = general_annihilator(trig_system(2), RootPrescription{{1.0, 4.0}, {}});
  CHECK(res.sign_report.count == 2);
  CHECK(kind_of([] { general_annihilator(trig_system(2), RootPrescription{{1.0}, {}}); }) ==
        ErrorKind::InvalidInput);
}

TEST_CASE("property: random power systems stay Chebyshev") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> a;
    double e = 0.0;
    for (int i = 0; i < gen.integer(1, 4); ++i) a.push_back(e += gen.uniform(0.3, 1.2));
    const ChebSystem s = power_system(a, Domain::interval(0.5, 2.5));
    CHECK(verify_chebyshev(s, 60, gen.next()).passed());
  }
}
