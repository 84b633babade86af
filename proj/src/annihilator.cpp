#include "chebz/annihilator.hpp"

#include <algorithm>
#include <cmath>

#include "chebz/error.hpp"

namespace chebz {

namespace {

void check_distinct_inside(std::vector<double> roots, const Domain& dom) {
  for (double r : roots) {
    require(std::isfinite(r), "roots must be finite");
    if (dom.is_circle()) {
      require(r >= 0.0 && r < kTwoPi, "circle roots must lie in [0, 2*pi)");
    } else {
      require(r > dom.lo() && r < dom.hi(), "roots must lie strictly inside the interval");
    }
  }
  std::sort(roots.begin(), roots.end());
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    require(roots[i + 1] > roots[i], "roots must be distinct");
  }
}

double cyclic_distance(double a, double b, const Domain& dom) {
  const double d = std::abs(a - b);
  return dom.is_circle() ? std::min(d, kTwoPi - d) : d;
}

}  // namespace

Func1D poly_annihilator(std::span<const double> roots, const Domain& dom) {
  require(!dom.is_circle(), "polynomial annihilator lives on an interval");
  std::vector<double> r(roots.begin(), roots.end());
  check_distinct_inside(r, dom);
  return Func1D(
      [r](double x) {
        double v = 1.0;
        for (double xi : r) v *= (x - xi);
        return v;
      },
      "poly_annihilator");
}

Func1D trig_annihilator(std::span<const double> roots) {
  std::vector<double> r(roots.begin(), roots.end());
  check_distinct_inside(r, Domain::circle());
  require(r.size() % 2 == 0, "a periodic function changes sign an even number of times");
  return Func1D(
      [r](double x) {
        double v = 1.0;
        for (double xi : r) v *= std::sin(0.5 * (x - xi));
        return v;
      },
      "trig_annihilator");
}

Func1D natural_annihilator(std::span<const double> roots, const Domain& dom) {
  return dom.is_circle() ? trig_annihilator(roots) : poly_annihilator(roots, dom);
}

AnnihilatorResult general_annihilator(const ChebSystem& sys, const RootPrescription& rp,
                                      double deriv_step) {
  const Domain& dom = sys.domain();
  const int n = sys.order();
  require(rp.feasible_for(n), "infeasible prescription: need 2p + q < n");
  std::vector<double> all = rp.simple_roots;
  all.insert(all.end(), rp.double_roots.begin(), rp.double_roots.end());
  check_distinct_inside(all, dom);
  if (dom.is_circle()) {
    require(rp.q() % 2 == 0, "on the circle the number of simple roots must be even");
  }
  const double h = deriv_step > 0 ? deriv_step : 1e-5 * dom.length();

  const int rows = rp.q() + 2 * rp.p();
  Matrix cond(rows, n);
  int r = 0;
  auto basis = sys.basis();
  for (double x : all) {
    for (int j = 0; j < n; ++j) cond(r, j) = basis[j](x);
    ++r;
  }
  for (double x : rp.double_roots) {
    for (int j = 0; j < n; ++j) {
      cond(r, j) = (basis[j](dom.wrap(x + h)) - basis[j](dom.wrap(x - h))) / (2 * h);
    }
    ++r;
  }

  Vector c;
  if (rows == 0 && n == 1) {
    c = Vector::Ones(1);
  } else {
    Matrix kernel;
    if (rows == 0) {
      kernel = Matrix::Identity(n, n);
    } else {
      Eigen::JacobiSVD<Matrix> svd(cond, Eigen::ComputeFullV);
      kernel = svd.matrixV().rightCols(n - rows);
    }
    if (kernel.cols() == 1) {
      c = kernel.col(0);
    } else {
      // More freedom than conditions: pick the kernel element closest to the
      // natural product shape with the same root pattern.
      const auto grid = sample_grid(dom, 512);
      std::vector<double> simple = rp.simple_roots;
      std::vector<double> dbl = rp.double_roots;
      auto target = [&](double t) {
        double v = 1.0;
        for (double s : simple) v *= dom.is_circle() ? std::sin(0.5 * (t - s)) : (t - s);
        for (double d : dbl) {
          const double f = dom.is_circle() ? std::sin(0.5 * (t - d)) : (t - d);
          v *= f * f;
        }
        return v;
      };
      const Matrix phi = collocation_matrix(sys, grid);
      Vector tau(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) tau(i) = target(grid[i]);
      const Matrix a = phi * kernel;
      const Vector y = a.colPivHouseholderQr().solve(tau);
      c = kernel * y;
    }
  }
  c.normalize();

  // Sign convention: positive at the first probe near the middle where the
  // combination is clearly nonzero.
  {
    const Func1D comb = sys.combination(to_std(c));
    const double mid = dom.is_circle() ? std::numbers::pi : 0.5 * (dom.lo() + dom.hi());
    double scale = 0.0;
    for (double t : sample_grid(dom, 256)) scale = std::max(scale, std::abs(comb(t)));
    for (int k = 0; k < 64; ++k) {
      const double off = (k % 2 ? 1 : -1) * ((k + 1) / 2) * dom.length() / 130.0;
      const double v = comb(dom.wrap(mid + off));
      if (std::abs(v) > 1e-6 * scale) {
        if (v < 0) c = -c;
        break;
      }
    }
  }

  AnnihilatorResult res;
  res.coeffs = to_std(c);
  res.combination = sys.combination(res.coeffs);
  res.sign_report = count_sign_changes(res.combination, dom);

  std::vector<double> simple = rp.simple_roots;
  std::sort(simple.begin(), simple.end());
  if (res.sign_report.degenerate || res.sign_report.count != rp.q()) {
    diagnostic("annihilator has " + std::to_string(res.sign_report.count) +
               " sign changes, expected " + std::to_string(rp.q()) +
               " (is the system Chebyshev?)");
  }
  for (std::size_t i = 0; i < simple.size(); ++i) {
    if (cyclic_distance(res.sign_report.locations[i], simple[i], dom) > 1e-6) {
      diagnostic("annihilator sign change misplaced near root " + std::to_string(simple[i]));
    }
  }
  double maxabs = 0.0, minabs = INFINITY;
  for (double t : sample_grid(dom, 4096)) {
    const double v = std::abs(res.combination(t));
    maxabs = std::max(maxabs, v);
    bool near = false;
    for (double x : all) near = near || cyclic_distance(t, x, dom) <= 1e-4;
    if (!near) minabs = std::min(minabs, v);
  }
  res.min_abs_away = maxabs > 0 ? minabs / maxabs : 0.0;
  if (!(res.min_abs_away > 1e-12)) {
    diagnostic("annihilator vanishes away from the prescribed roots (is the system Chebyshev?)");
  }
  return res;
}

}  // namespace chebz
