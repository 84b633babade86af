#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "chebz/check.hpp"
#include "chebz/curves.hpp"
#include "chebz/funcspace.hpp"

namespace chebz {

// Oval given by its support function
// h(a) = h0 + sum_m a_m cos(m a) + b_m sin(m a), m = 1..M.
struct OvalSupport {
  double h0 = 1.0;
  std::vector<std::array<double, 2>> coeffs;  // (a_m, b_m) for m = 1, 2, ...

  double h(double alpha) const;
  double dh(double alpha) const;
  double d2h(double alpha) const;
  // No harmonic above the first: a translated circle.
  bool is_circle() const;
};

// Throws unless h > 0 and h + h'' > 0 on a 4096-point grid.
void validate(const OvalSupport& oval);

// R = h + h'' = h0 + sum (1 - m^2)(a_m cos + b_m sin).
Func1D radius_of_curvature(const OvalSupport& oval);

struct HarmonicResidual {
  double cos_integral = 0.0;  // integral of R cos over the circle
  double sin_integral = 0.0;

  double max_abs() const;
};
HarmonicResidual verify_R_orthogonality(const OvalSupport& oval, const QuadSpec& quad);

struct VertexReport {
  CheckStatus status = CheckStatus::NotApplicable;
  int extrema = 0;
  int bound = 4;
  std::string note;
};

// Extrema of the radius of curvature; a circle is reported as degenerate.
VertexReport four_vertex_check(const OvalSupport& oval, int grid_n = 4096);

// Extrema of R1 / R2, the ratio of arc length elements at points with
// parallel tangents.
VertexReport curvature_ratio_check(const OvalSupport& o1, const OvalSupport& o2,
                                   int grid_n = 4096);

// h0 = 1 and random coefficients for m = 1..M scaled so that
// sum m^2 (|a_m| + |b_m|) = amplitude < 1, which keeps h + h'' positive.
OvalSupport random_oval(int harmonics, double amplitude, std::uint64_t seed);

// x = h cos a - h' sin a, y = h sin a + h' cos a.
CurveRd oval_to_curve(const OvalSupport& oval);

}  // namespace chebz
