#pragma once

#include <span>
#include <vector>

#include "chebz/chebsys.hpp"
#include "chebz/funcspace.hpp"

namespace chebz {

// Odd-multiplicity (sign-changing) and even-multiplicity (touching) roots.
struct RootPrescription {
  std::vector<double> simple_roots;
  std::vector<double> double_roots;

  int p() const noexcept { return static_cast<int>(double_roots.size()); }
  int q() const noexcept { return static_cast<int>(simple_roots.size()); }
  // Existence condition for a generalized polynomial with exactly these roots.
  bool feasible_for(int order) const noexcept { return 2 * p() + q() < order; }
};

// (x - x_1)...(x - x_q) on an interval.
Func1D poly_annihilator(std::span<const double> roots, const Domain& dom);

// prod sin((x - x_i) / 2) on the circle; needs an even number of roots.
Func1D trig_annihilator(std::span<const double> roots);

// Annihilator of the domain's natural kind: polynomial on an interval,
// half-angle sine product on the circle.
Func1D natural_annihilator(std::span<const double> roots, const Domain& dom);

struct AnnihilatorResult {
  std::vector<double> coeffs;  // unit norm
  Func1D combination;
  SignChangeReport sign_report;
  double min_abs_away = 0.0;  // min |combination| away from the roots, relative to its max
};

// Generalized polynomial sum c_j f_j with the prescribed roots. deriv_step <= 0
// selects 1e-5 of the domain length for the double-root derivative conditions.
// Throws Diagnostic if the result does not change sign exactly at the simple
// roots or vanishes elsewhere.
AnnihilatorResult general_annihilator(const ChebSystem& sys, const RootPrescription& rp,
                                      double deriv_step = -1.0);

}  // namespace chebz
