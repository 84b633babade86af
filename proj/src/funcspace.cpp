#include "chebz/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chebz/error.hpp"

namespace chebz {

Domain Domain::interval(double a, double b) {
  require(std::isfinite(a) && std::isfinite(b), "interval endpoints must be finite");
  require(a < b, "interval requires a < b");
  return Domain(Kind::Interval, a, b);
}

Domain Domain::circle() { return Domain(Kind::Circle, 0.0, kTwoPi); }

double Domain::wrap(double t) const {
  if (kind_ == Kind::Interval) return t;
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

bool Domain::contains(double t) const {
  if (!std::isfinite(t)) return false;
  if (kind_ == Kind::Circle) return true;
  return t >= a_ && t <= b_;
}

Func1D::Func1D(Eval eval, std::string label, std::vector<double> kinks)
    : eval_(std::make_shared<const Eval>(std::move(eval))),
      label_(std::move(label)),
      kinks_(std::move(kinks)) {
  std::sort(kinks_.begin(), kinks_.end());
  kinks_.erase(std::unique(kinks_.begin(), kinks_.end()), kinks_.end());
}

Func1D Func1D::constant(double c) {
  return Func1D([c](double) { return c; }, "const");
}

namespace {

std::vector<double> merged_kinks(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

Func1D product(const Func1D& f, const Func1D& g) {
  return Func1D([f, g](double t) { return f(t) * g(t); }, f.label() + "*" + g.label(),
                merged_kinks(f.kinks(), g.kinks()));
}

Func1D product(const Func1D& f, const Func1D& g, const Func1D& h) {
  return product(product(f, g), h);
}

Func1D scaled(const Func1D& f, double c) {
  return Func1D([f, c](double t) { return c * f(t); }, f.label(),
                std::vector<double>(f.kinks().begin(), f.kinks().end()));
}

Func1D negated(const Func1D& f) { return scaled(f, -1.0); }

Func1D linear_combination(std::span<const Func1D> basis, std::span<const double> coeffs,
                          std::string label) {
  require(basis.size() == coeffs.size(), "coefficient count must match basis size");
  std::vector<Func1D> b(basis.begin(), basis.end());
  std::vector<double> c(coeffs.begin(), coeffs.end());
  std::vector<double> kinks;
  for (const auto& f : b) kinks.insert(kinks.end(), f.kinks().begin(), f.kinks().end());
  return Func1D(
      [b = std::move(b), c = std::move(c)](double t) {
        double s = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (c[j] != 0.0) s += c[j] * b[j](t);
        }
        return s;
      },
      label.empty() ? "combination" : std::move(label), std::move(kinks));
}

QuadSpec QuadSpec::gauss(int panels, int nodes_per_panel) {
  return {Scheme::GaussComposite, panels, nodes_per_panel};
}

QuadSpec QuadSpec::trapezoid(int nodes) { return {Scheme::PeriodicTrapezoid, nodes, 1}; }

QuadSpec QuadSpec::default_for(const Domain& dom) {
  return dom.is_circle() ? trapezoid(1024) : gauss(32, 16);
}

void validate(const QuadSpec& quad, const Domain& dom) {
  require(quad.panels > 0 && quad.nodes_per_panel > 0, "quadrature sizes must be positive");
  require(quad.total_nodes() >= 16, "quadrature needs at least 16 nodes");
  if (quad.scheme == QuadSpec::Scheme::PeriodicTrapezoid) {
    require(dom.is_circle(), "periodic trapezoid rule is only valid on the circle");
  } else {
    require(!dom.is_circle(), "composite Gauss rule is only valid on an interval");
    require(quad.nodes_per_panel <= 128, "at most 128 Gauss nodes per panel");
  }
}

GaussRule gauss_legendre(int k) {
  require(k >= 1 && k <= 128, "Gauss-Legendre order out of range");
  GaussRule rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  const int half = (k + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_k starting from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (k == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= k; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = (k == 1) ? 1.0 : k * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[k - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[k - 1 - i] = w;
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.0;
  return rule;
}

namespace {

double gauss_composite(const Func1D& f, const Domain& dom, double lo, double hi, int panels,
                       const GaussRule& rule) {
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * width;
    const double h = 0.5 * width;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      s += rule.weights[i] * f(dom.wrap(c + h * rule.nodes[i]));
    }
    total += h * s;
  }
  return total;
}

double integrate_range_with(const Func1D& f, const Domain& dom, double lo, double hi,
                            int panels, const GaussRule& rule) {
  if (!(hi > lo)) return 0.0;
  // Kinks inside (lo, hi), accounting for arcs that cross 2*pi.
  std::vector<double> cuts;
  for (double k : f.kinks()) {
    for (double shift : {0.0, kTwoPi, -kTwoPi}) {
      if (!dom.is_circle() && shift != 0.0) continue;
      const double t = k + shift;
      const double margin = 1e-14 * std::max(1.0, std::abs(t));
      if (t > lo + margin && t < hi - margin) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double left = lo;
  for (double c : cuts) {
    total += gauss_composite(f, dom, left, c, panels, rule);
    left = c;
  }
  total += gauss_composite(f, dom, left, hi, panels, rule);
  return total;
}

}  // namespace

double integrate_range(const Func1D& f, const Domain& dom, double lo, double hi, int panels,
                       int nodes_per_panel) {
  require(panels > 0, "panels must be positive");
  return integrate_range_with(f, dom, lo, hi, panels, gauss_legendre(nodes_per_panel));
}

double integrate(const Func1D& f, const Domain& dom, const QuadSpec& quad) {
  validate(quad, dom);
  if (quad.scheme == QuadSpec::Scheme::GaussComposite) {
    return integrate_range(f, dom, dom.lo(), dom.hi(), quad.panels, quad.nodes_per_panel);
  }
  const int n = quad.total_nodes();
  if (f.kinks().empty()) {
    const double h = kTwoPi / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f(i * h);
    return h * s;
  }
  // A kinked periodic integrand loses the trapezoid rule's spectral accuracy;
  // integrate arc by arc with Gauss-Legendre instead.
  std::vector<double> cuts;
  for (double k : f.kinks()) cuts.push_back(dom.wrap(k));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const GaussRule rule = gauss_legendre(16);
  const int panels = std::max(2, n / (16 * static_cast<int>(cuts.size())));
  double total = 0.0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts[0] + kTwoPi;
    total += gauss_composite(f, dom, lo, hi, panels, rule);
  }
  return total;
}

double inner_product(const Func1D& f, const Func1D& g, const Func1D& rho, const Domain& dom,
                     const QuadSpec& quad) {
  return integrate(product(f, g, rho), dom, quad);
}

std::vector<double> sample_grid(const Domain& dom, int n) {
  std::vector<double> t(n);
  if (dom.is_circle()) {
    for (int i = 0; i < n; ++i) t[i] = kTwoPi * i / n;
  } else {
    const double h = dom.length() / n;
    for (int i = 0; i < n; ++i) t[i] = dom.lo() + (i + 0.5) * h;
  }
  return t;
}

namespace {

void check_count_args(int grid_n, double tol_rel) {
  require(grid_n >= 64, "grid_n must be at least 64");
  require(tol_rel > 0.0 && tol_rel <= 1e-2, "tol_rel must lie in (0, 1e-2]");
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Bisection for a sign change of `g` inside [lo, hi], sign_lo = sign(g(lo)).
double bisect(const std::function<double(double)>& g, double lo, double hi, int sign_lo) {
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = g(mid);
    if (v == 0.0) return mid;
    if (sign_of(v) == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

// Collapse near-zero samples and record opposite-sign transitions between the
// remaining ones. `g` refines each bracket; `params` are the sample locations.
SignChangeReport transitions(const std::vector<double>& values, const std::vector<double>& params,
                             const Domain& dom, bool cyclic, double tol_rel,
                             const std::function<double(double)>& g) {
  SignChangeReport rep;
  double maxabs = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) invalid_input("function is not finite on the sampling grid");
    maxabs = std::max(maxabs, std::abs(v));
  }
  const double thresh = tol_rel * maxabs;
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > thresh) nz.push_back(i);
  }
  if (maxabs == 0.0 || nz.empty()) {
    rep.degenerate = true;
    return rep;
  }
  const double period = kTwoPi;
  auto refine = [&](std::size_t i, std::size_t j, bool wrap) {
    const double lo = params[i];
    const double hi = wrap ? params[j] + period : params[j];
    const double loc = bisect(g, lo, hi, sign_of(values[i]));
    rep.locations.push_back(dom.wrap(loc));
  };
  for (std::size_t k = 0; k + 1 < nz.size(); ++k) {
    if (sign_of(values[nz[k]]) != sign_of(values[nz[k + 1]])) refine(nz[k], nz[k + 1], false);
  }
  if (cyclic && nz.size() >= 2) {
    if (sign_of(values[nz.back()]) != sign_of(values[nz.front()])) {
      refine(nz.back(), nz.front(), true);
    }
  }
  std::sort(rep.locations.begin(), rep.locations.end());
  rep.count = static_cast<int>(rep.locations.size());
  return rep;
}

}  // namespace

int count_sign_transitions(std::span<const double> values, bool cyclic, double tol_rel) {
  double maxabs = 0.0;
  for (double v : values) maxabs = std::max(maxabs, std::abs(v));
  if (maxabs == 0.0) return -1;
  const double thresh = tol_rel * maxabs;
  int first = 0, prev = 0, count = 0;
  for (double v : values) {
    if (std::abs(v) <= thresh) continue;
    const int s = sign_of(v);
    if (first == 0) first = s;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  if (first == 0) return -1;
  if (cyclic && prev != first) ++count;
  return count;
}

SignChangeReport count_sign_changes(const Func1D& f, const Domain& dom, int grid_n,
                                    double tol_rel) {
  check_count_args(grid_n, tol_rel);
  auto params = sample_grid(dom, grid_n);
  // Midpoints alone miss a crossing within half a cell of an endpoint.
  if (!dom.is_circle()) {
    params.insert(params.begin(), dom.lo());
    params.push_back(dom.hi());
  }
  std::vector<double> values(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) values[i] = f(params[i]);
  auto g = [&](double t) { return f(dom.wrap(t)); };
  return transitions(values, params, dom, dom.is_circle(), tol_rel, g);
}

SignChangeReport count_extrema(const Func1D& f, const Domain& dom, int grid_n, double tol_rel) {
  check_count_args(grid_n, tol_rel);
  const auto params = sample_grid(dom, grid_n);
  const std::size_t n = params.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = f(params[i]);

  SignChangeReport rep;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (!(*mx - *mn > tol_rel * scale)) {
    rep.degenerate = true;
    return rep;
  }

  const double h = params[1] - params[0];
  std::vector<double> dvals;
  std::vector<double> dparams;
  if (dom.is_circle()) {
    for (std::size_t i = 0; i < n; ++i) {
      dvals.push_back((values[(i + 1) % n] - values[(i + n - 1) % n]) / (2 * h));
      dparams.push_back(params[i]);
    }
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      dvals.push_back((values[i + 1] - values[i - 1]) / (2 * h));
      dparams.push_back(params[i]);
    }
  }
  const double step = 1e-6 * dom.length();
  auto deriv = [&](double t) {
    return (f(dom.wrap(t + step)) - f(dom.wrap(t - step))) / (2 * step);
  };
  rep = transitions(dvals, dparams, dom, dom.is_circle(), tol_rel, deriv);
  rep.degenerate = false;
  if (!dom.is_circle()) {
    rep.locations.insert(rep.locations.begin(), dom.lo());
    rep.locations.push_back(dom.hi());
    rep.count = static_cast<int>(rep.locations.size());
  }
  return rep;
}

}  // namespace chebz
