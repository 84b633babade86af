#include "chebz/chebsys.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chebz/error.hpp"
#include "chebz/rng.hpp"

namespace chebz {

ChebSystem::ChebSystem(std::vector<Func1D> basis, Domain dom, std::string label)
    : basis_(std::move(basis)), dom_(dom), label_(std::move(label)) {
  require(!basis_.empty(), "a Chebyshev system needs at least one function");
  if (dom_.is_circle()) {
    require(order() % 2 == 1, "a Chebyshev system on the circle must have odd order");
  }
}

Func1D ChebSystem::combination(std::span<const double> coeffs) const {
  return linear_combination(basis_, coeffs, label_ + " combination");
}

ChebSystem polynomial_system(int degree, const Domain& dom) {
  require(degree >= 0, "polynomial degree must be nonnegative");
  require(!dom.is_circle(), "the polynomial system lives on an interval");
  std::vector<Func1D> basis;
  for (int j = 0; j <= degree; ++j) {
    basis.emplace_back([j](double x) { return std::pow(x, j); }, "x^" + std::to_string(j));
  }
  return ChebSystem(std::move(basis), dom, "poly:" + std::to_string(degree));
}

ChebSystem trig_system(int harmonics) {
  require(harmonics >= 0, "harmonic count must be nonnegative");
  std::vector<Func1D> basis;
  basis.emplace_back([](double) { return 1.0; }, "1");
  for (int k = 1; k <= harmonics; ++k) {
    basis.emplace_back([k](double x) { return std::cos(k * x); }, "cos" + std::to_string(k));
    basis.emplace_back([k](double x) { return std::sin(k * x); }, "sin" + std::to_string(k));
  }
  return ChebSystem(std::move(basis), Domain::circle(), "trig:" + std::to_string(harmonics));
}

ChebSystem power_system(std::span<const double> alphas, const Domain& dom) {
  require(!dom.is_circle(), "the power system lives on an interval");
  require(dom.lo() > 0.0, "power functions need a positive interval");
  double prev = 0.0;
  for (double a : alphas) {
    require(std::isfinite(a) && a > prev, "exponents must be positive and strictly increasing");
    prev = a;
  }
  std::vector<Func1D> basis;
  basis.emplace_back([](double) { return 1.0; }, "1");
  std::string label = "power:";
  for (double a : alphas) {
    basis.emplace_back([a](double t) { return std::pow(t, a); }, "t^" + std::to_string(a));
    label += std::to_string(a) + ",";
  }
  return ChebSystem(std::move(basis), dom, label);
}

ChebSystem system_from_spec(const std::string& spec, std::optional<Domain> interval) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) invalid_input("system '" + spec + "' has no ':' argument");
  const std::string name = spec.substr(0, colon);
  std::vector<double> args;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      invalid_input("malformed number '" + item + "' in system '" + spec + "'");
    }
  }
  if (interval) require(!interval->is_circle(), "system interval must be an interval");
  auto whole = [&](const char* what) {
    if (args.size() != 1 || args[0] != std::floor(args[0]) || args[0] < 0 || args[0] > 64) {
      invalid_input(std::string(what) + " must be a single nonnegative integer");
    }
    return static_cast<int>(args[0]);
  };
  if (name == "poly") return polynomial_system(whole("degree"), interval.value_or(Domain::interval(-1, 1)));
  if (name == "trig") return trig_system(whole("harmonic count"));
  if (name == "power") {
    require(!args.empty(), "power system needs at least one exponent");
    return power_system(args, interval.value_or(Domain::interval(1, 2)));
  }
  invalid_input("unknown system '" + name + "' (expected poly, trig or power)");
}

Matrix collocation_matrix(std::span<const Func1D> basis, const Domain& dom,
                          std::span<const double> points) {
  Matrix m(points.size(), basis.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(dom.contains(points[i]), "collocation point outside the domain");
    const double t = dom.wrap(points[i]);
    for (std::size_t j = 0; j < basis.size(); ++j) m(i, j) = basis[j](t);
  }
  return m;
}

Matrix collocation_matrix(const ChebSystem& sys, std::span<const double> points) {
  return collocation_matrix(sys.basis(), sys.domain(), points);
}

namespace {

// Sorted random tuple of distinct parameters. Circle tuples start at their
// smallest parameter, which fixes the cyclic orientation.
std::vector<double> random_tuple(Rng& rng, const Domain& dom, int n) {
  std::vector<double> t(n);
  for (;;) {
    for (auto& x : t) {
      x = dom.is_circle() ? rng.uniform(0.0, kTwoPi) : rng.uniform(dom.lo(), dom.hi());
    }
    std::sort(t.begin(), t.end());
    bool distinct = true;
    for (int i = 0; i + 1 < n; ++i) distinct = distinct && t[i + 1] > t[i];
    if (distinct && (dom.is_circle() || t.front() > dom.lo())) return t;
  }
}

int det_sign(std::span<const Func1D> basis, const Domain& dom, std::span<const double> pts) {
  const double det = collocation_matrix(basis, dom, pts).partialPivLu().determinant();
  if (!std::isfinite(det)) return 0;
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

double max_abs_on_grid(const Func1D& f, const Domain& dom) {
  double m = 0.0;
  for (double t : sample_grid(dom, kDefaultGrid)) m = std::max(m, std::abs(f(t)));
  return m;
}

// Combination vanishing at the given tuple, reported as a witness when it
// indeed vanishes at all of them.
bool tuple_witness(std::span<const Func1D> basis, const Domain& dom,
                   std::span<const double> pts, ChebVerdict& out) {
  const Matrix m = collocation_matrix(basis, dom, pts);
  const Vector c = smallest_right_singular_vector(m);
  const auto coeffs = to_std(c);
  const Func1D comb = linear_combination(basis, coeffs);
  const double scale = max_abs_on_grid(comb, dom);
  if (scale == 0.0) return false;
  std::vector<double> zeros;
  for (double t : pts) {
    if (std::abs(comb(dom.wrap(t))) <= 1e-8 * scale) zeros.push_back(dom.wrap(t));
  }
  if (zeros.size() < basis.size()) return false;
  out.status = ChebVerdict::Status::Counterexample;
  out.witness_coeffs = coeffs;
  out.witness_zero_count = static_cast<int>(zeros.size());
  out.witness_zeros = std::move(zeros);
  return true;
}

// Walk the straight path between two ordered tuples whose determinants have
// opposite signs; the path stays ordered, and it crosses a singular tuple.
bool sign_flip_witness(std::span<const Func1D> basis, const Domain& dom,
                       const std::vector<double>& t0, int s0, const std::vector<double>& t1,
                       ChebVerdict& out) {
  double lo = 0.0, hi = 1.0;
  std::vector<double> mid(t0.size());
  auto at = [&](double lam) {
    for (std::size_t i = 0; i < t0.size(); ++i) mid[i] = (1 - lam) * t0[i] + lam * t1[i];
    return det_sign(basis, dom, mid);
  };
  for (int it = 0; it < 60; ++it) {
    const double lam = 0.5 * (lo + hi);
    const int s = at(lam);
    if (s == 0) break;
    if (s == s0) {
      lo = lam;
    } else {
      hi = lam;
    }
  }
  at(0.5 * (lo + hi));
  return tuple_witness(basis, dom, mid, out);
}

bool combination_witness(std::span<const Func1D> basis, const Domain& dom,
                         const std::vector<double>& coeffs, ChebVerdict& out) {
  const Func1D comb = linear_combination(basis, coeffs);
  const auto rep = count_sign_changes(comb, dom);
  if (rep.degenerate || rep.count <= static_cast<int>(basis.size()) - 1) return false;
  out.status = ChebVerdict::Status::Counterexample;
  out.witness_coeffs = coeffs;
  out.witness_zero_count = rep.count;
  out.witness_zeros = rep.locations;
  return true;
}

}  // namespace

ChebVerdict verify_chebyshev(std::span<const Func1D> basis, const Domain& dom, int trials,
                             std::uint64_t rng_seed) {
  require(trials >= 1, "trials must be at least 1");
  require(!basis.empty(), "empty basis");
  const int n = static_cast<int>(basis.size());
  ChebVerdict verdict;
  std::vector<double> ref_tuple;
  int ref_sign = 0;
  for (int trial = 0; trial < trials; ++trial) {
    verdict.trials_run = trial + 1;
    Rng rng = Rng::derived(rng_seed, static_cast<std::uint64_t>(trial));

    const auto tuple = random_tuple(rng, dom, n);
    const int s = det_sign(basis, dom, tuple);
    if (s == 0) {
      if (tuple_witness(basis, dom, tuple, verdict)) {
        verdict.probe = "determinant";
        return verdict;
      }
    } else if (ref_sign == 0) {
      ref_sign = s;
      ref_tuple = tuple;
    } else if (s != ref_sign) {
      if (sign_flip_witness(basis, dom, ref_tuple, ref_sign, tuple, verdict)) {
        verdict.probe = "determinant";
        return verdict;
      }
    }

    if (combination_witness(basis, dom, rng.unit_vector(n), verdict)) {
      verdict.probe = "combination";
      return verdict;
    }

    if (n >= 2) {
      const auto pts = random_tuple(rng, dom, n - 1);
      const Vector c = smallest_right_singular_vector(collocation_matrix(basis, dom, pts));
      if (combination_witness(basis, dom, to_std(c), verdict)) {
        verdict.probe = "interpolation";
        return verdict;
      }
    }
  }
  return verdict;
}

ChebVerdict verify_chebyshev(const ChebSystem& sys, int trials, std::uint64_t rng_seed) {
  return verify_chebyshev(sys.basis(), sys.domain(), trials, rng_seed);
}

int dimension_estimate(std::span<const Func1D> funcs, const Domain& dom, int sample_n,
                       double rank_tol) {
  require(sample_n >= 4 * static_cast<int>(funcs.size()), "sample_n must be >= 4 * #funcs");
  if (funcs.empty()) return 0;
  // Equally spaced with an irrational offset inside each cell.
  const double offset = 0.5 * (std::sqrt(5.0) - 1.0);
  std::vector<double> pts(sample_n);
  for (int i = 0; i < sample_n; ++i) {
    pts[i] = dom.lo() + dom.length() * (i + offset) / sample_n;
  }
  Matrix m = collocation_matrix(funcs, dom, pts);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double norm = m.col(j).norm();
    if (norm > 0) m.col(j) /= norm;
  }
  return numerical_rank(m, rank_tol);
}

}  // namespace chebz
