#include "chebz/fourvertex.hpp"

#include <cmath>

#include "chebz/error.hpp"
#include "chebz/rng.hpp"

namespace chebz {

double OvalSupport::h(double alpha) const {
  double v = h0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double m = static_cast<double>(i + 1);
    v += coeffs[i][0] * std::cos(m * alpha) + coeffs[i][1] * std::sin(m * alpha);
  }
  return v;
}

double OvalSupport::dh(double alpha) const {
  double v = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double m = static_cast<double>(i + 1);
    v += m * (-coeffs[i][0] * std::sin(m * alpha) + coeffs[i][1] * std::cos(m * alpha));
  }
  return v;
}

double OvalSupport::d2h(double alpha) const {
  double v = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double m = static_cast<double>(i + 1);
    v -= m * m * (coeffs[i][0] * std::cos(m * alpha) + coeffs[i][1] * std::sin(m * alpha));
  }
  return v;
}

bool OvalSupport::is_circle() const {
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    if (coeffs[i][0] != 0.0 || coeffs[i][1] != 0.0) return false;
  }
  return true;
}

void validate(const OvalSupport& oval) {
  require(std::isfinite(oval.h0), "h0 must be finite");
  for (const auto& c : oval.coeffs) {
    require(std::isfinite(c[0]) && std::isfinite(c[1]), "support coefficients must be finite");
  }
  for (double a : sample_grid(Domain::circle(), 4096)) {
    if (!(oval.h(a) > 0.0)) invalid_input("support function must be positive");
    if (!(oval.h(a) + oval.d2h(a) > 0.0)) {
      invalid_input("h + h'' must be positive (the oval must be strictly convex)");
    }
  }
}

Func1D radius_of_curvature(const OvalSupport& oval) {
  validate(oval);
  return Func1D(
      [oval](double a) {
        double v = oval.h0;
        for (std::size_t i = 0; i < oval.coeffs.size(); ++i) {
          const double m = static_cast<double>(i + 1);
          v += (1 - m * m) * (oval.coeffs[i][0] * std::cos(m * a) + oval.coeffs[i][1] * std::sin(m * a));
        }
        return v;
      },
      "R");
}

double HarmonicResidual::max_abs() const {
  return std::max(std::abs(cos_integral), std::abs(sin_integral));
}

HarmonicResidual verify_R_orthogonality(const OvalSupport& oval, const QuadSpec& quad) {
  const Func1D r = radius_of_curvature(oval);
  const Domain dom = Domain::circle();
  HarmonicResidual res;
  res.cos_integral = integrate(product(r, Func1D([](double a) { return std::cos(a); })), dom, quad);
  res.sin_integral = integrate(product(r, Func1D([](double a) { return std::sin(a); })), dom, quad);
  return res;
}

namespace {

VertexReport extrema_of(const Func1D& f, int grid_n) {
  VertexReport rep;
  const auto ext = count_extrema(f, Domain::circle(), grid_n);
  if (ext.degenerate) {
    rep.status = CheckStatus::Degenerate;
    rep.note = "constant function has no isolated extrema";
    return rep;
  }
  rep.extrema = ext.count;
  rep.status = rep.extrema >= rep.bound ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

}  // namespace

VertexReport four_vertex_check(const OvalSupport& oval, int grid_n) {
  return extrema_of(radius_of_curvature(oval), grid_n);
}

VertexReport curvature_ratio_check(const OvalSupport& o1, const OvalSupport& o2, int grid_n) {
  const Func1D r1 = radius_of_curvature(o1);
  const Func1D r2 = radius_of_curvature(o2);
  auto rep = extrema_of(Func1D([r1, r2](double a) { return r1(a) / r2(a); }, "R1/R2"), grid_n);
  if (o2.is_circle()) {
    rep.note = rep.note.empty() ? "reference oval is a circle: the ratio is a multiple of R1"
                                : rep.note + "; reference oval is a circle";
  }
  return rep;
}

OvalSupport random_oval(int harmonics, double amplitude, std::uint64_t seed) {
  require(harmonics >= 2, "need at least two harmonics");
  require(amplitude >= 0.0 && amplitude < 1.0, "amplitude must lie in [0, 1)");
  Rng rng(seed);
  OvalSupport o;
  o.h0 = 1.0;
  double weight = 0.0;
  for (int m = 1; m <= harmonics; ++m) {
    const double a = rng.normal(), b = rng.normal();
    o.coeffs.push_back({a, b});
    weight += m * m * (std::abs(a) + std::abs(b));
  }
  const double s = weight > 0.0 ? amplitude / weight : 0.0;
  for (auto& c : o.coeffs) {
    c[0] *= s;
    c[1] *= s;
  }
  return o;
}

CurveRd oval_to_curve(const OvalSupport& oval) {
  validate(oval);
  return CurveRd(
      [oval](double a) {
        const double h = oval.h(a), dh = oval.dh(a);
        Point p(2);
        p << h * std::cos(a) - dh * std::sin(a), h * std::sin(a) + dh * std::cos(a);
        return p;
      },
      2, Domain::circle(), "oval");
}

}  // namespace chebz
