#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chebz/funcspace.hpp"
#include "chebz/linalg.hpp"

namespace chebz {

// Ordered basis of a candidate Chebyshev space. On the circle the order must
// be odd: sign changes of a periodic function come in pairs.
class ChebSystem {
 public:
  ChebSystem(std::vector<Func1D> basis, Domain dom, std::string label = {});

  int order() const noexcept { return static_cast<int>(basis_.size()); }
  const Domain& domain() const noexcept { return dom_; }
  std::span<const Func1D> basis() const noexcept { return basis_; }
  const Func1D& operator[](std::size_t j) const { return basis_[j]; }
  const std::string& label() const noexcept { return label_; }

  Func1D combination(std::span<const double> coeffs) const;

 private:
  std::vector<Func1D> basis_;
  Domain dom_;
  std::string label_;
};

ChebSystem polynomial_system(int degree, const Domain& dom);
ChebSystem trig_system(int harmonics);
ChebSystem power_system(std::span<const double> alphas, const Domain& dom);

// "poly:N", "trig:K" or "power:alpha_1,...,alpha_d". Polynomial and power
// systems live on `interval`, which defaults to (-1, 1) and (1, 2).
ChebSystem system_from_spec(const std::string& spec,
                            std::optional<Domain> interval = std::nullopt);

// Entry (i, j) = f_j(points[i]). Points must lie in the domain.
Matrix collocation_matrix(std::span<const Func1D> basis, const Domain& dom,
                          std::span<const double> points);
Matrix collocation_matrix(const ChebSystem& sys, std::span<const double> points);

struct ChebVerdict {
  enum class Status { NoViolationFound, Counterexample };
  Status status = Status::NoViolationFound;
  std::optional<std::vector<double>> witness_coeffs;
  std::optional<int> witness_zero_count;
  std::vector<double> witness_zeros;  // where the witness vanishes or changes sign
  std::string probe;                  // which probe produced the witness
  int trials_run = 0;

  bool passed() const noexcept { return status == Status::NoViolationFound; }
};

inline constexpr int kDefaultChebTrials = 500;

// Randomized falsification of the Chebyshev property. Each trial runs a
// determinant-sign probe on a random ordered tuple, a random unit-coefficient
// combination probe, and an interpolation probe (the combination vanishing at
// order-1 random points must not change sign anywhere else).
ChebVerdict verify_chebyshev(const ChebSystem& sys, int trials = kDefaultChebTrials,
                             std::uint64_t rng_seed = 0);
// Same probes for a basis that is not known to have a valid order for its
// domain (an even-dimensional space on the circle, for example).
ChebVerdict verify_chebyshev(std::span<const Func1D> basis, const Domain& dom, int trials,
                             std::uint64_t rng_seed);

inline constexpr double kDefaultRankTol = 1e-8;

// Numerical rank of the column-normalized collocation matrix on sample_n
// equally spaced points with a fixed offset.
int dimension_estimate(std::span<const Func1D> funcs, const Domain& dom, int sample_n,
                       double rank_tol = kDefaultRankTol);

}  // namespace chebz
