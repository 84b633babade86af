#include "chebz/orthosynth.hpp"

#include <algorithm>
#include <cmath>

#include "chebz/annihilator.hpp"
#include "chebz/error.hpp"

namespace chebz {

int m_of(const Domain& dom, int n) {
  require(n >= 1, "order must be at least 1");
  if (dom.is_circle()) {
    require(n % 2 == 1, "order on the circle must be odd");
    return n + 1;
  }
  return n;
}

namespace {

void check_ordered(std::span<const double> pts, const Domain& dom) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    require(std::isfinite(pts[i]), "breakpoints must be finite");
    if (dom.is_circle()) {
      require(pts[i] >= 0.0 && pts[i] < kTwoPi, "circle breakpoints must lie in [0, 2*pi)");
    } else {
      require(pts[i] > dom.lo() && pts[i] < dom.hi(), "breakpoints must be interior");
    }
    if (i > 0) require(pts[i] > pts[i - 1], "breakpoints must be strictly increasing");
  }
}

std::vector<double> piece_kinks(std::span<const Piece> pieces, const Domain& dom) {
  std::vector<double> k;
  for (const auto& p : pieces) {
    k.push_back(dom.wrap(p.lo));
    k.push_back(dom.wrap(p.hi));
  }
  return k;
}

// Residuals <F, f_j> integrated piece by piece with twice the panels used to
// build the moment matrix.
std::vector<double> piecewise_residuals(const ChebSystem& sys, const Func1D& integrand_factor,
                                        std::span<const Piece> pieces, const QuadSpec& quad) {
  const auto rule = piece_rule(quad, pieces.size());
  std::vector<double> res(sys.order(), 0.0);
  for (int j = 0; j < sys.order(); ++j) {
    const Func1D fj = sys[j];
    const Func1D prod([&](double t) { return integrand_factor(t) * fj(t); });
    for (const auto& p : pieces) {
      res[j] += integrate_range(prod, sys.domain(), p.lo, p.hi, 2 * rule.panels, rule.nodes);
    }
  }
  return res;
}

Vector fix_sign(Vector p) {
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) != 0.0) {
      if (p(i) < 0) p = -p;
      break;
    }
  }
  return p;
}

void check_same_sign(const Vector& p, double rel_floor) {
  const double mx = p.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p(i) > rel_floor * mx)) {
      diagnostic("step heights are not of one strict sign (is the system Chebyshev?)");
    }
  }
}

}  // namespace

PieceRule piece_rule(const QuadSpec& quad, std::size_t pieces) {
  if (quad.scheme == QuadSpec::Scheme::GaussComposite) {
    return {quad.panels, quad.nodes_per_panel};
  }
  const int per = quad.total_nodes() / (16 * static_cast<int>(std::max<std::size_t>(1, pieces)));
  return {std::max(4, per), 16};
}

bool in_piece(double t, const Piece& p, const Domain& dom) {
  if (t >= p.lo && t < p.hi) return true;
  return dom.is_circle() && t + kTwoPi >= p.lo && t + kTwoPi < p.hi;
}

std::vector<Piece> standard_pieces(const Domain& dom, std::span<const double> bp) {
  check_ordered(bp, dom);
  std::vector<Piece> pieces;
  if (dom.is_circle()) {
    require(!bp.empty(), "circle pieces need at least one breakpoint");
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) pieces.push_back({bp[i], bp[i + 1]});
    pieces.push_back({bp.back(), bp.front() + kTwoPi});
  } else {
    double left = dom.lo();
    for (double x : bp) {
      pieces.push_back({left, x});
      left = x;
    }
    pieces.push_back({left, dom.hi()});
  }
  return pieces;
}

int StepWeight::piece_of(double t) const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (in_piece(t, pieces[i], dom)) return static_cast<int>(i);
  }
  return -1;
}

double StepWeight::operator()(double t) const {
  const int i = piece_of(dom.wrap(t));
  return i < 0 ? 0.0 : heights[i];
}

Func1D StepWeight::as_func() const {
  StepWeight copy = *this;
  return Func1D([copy](double t) { return copy(t); }, "step", piece_kinks(pieces, dom));
}

Matrix moment_matrix(const ChebSystem& sys, const Func1D& g, std::span<const Piece> pieces,
                     const QuadSpec& quad) {
  validate(quad, sys.domain());
  const auto rule = piece_rule(quad, pieces.size());
  Matrix a(sys.order(), static_cast<Eigen::Index>(pieces.size()));
  for (int j = 0; j < sys.order(); ++j) {
    const Func1D fj = sys[j];
    const Func1D prod([&](double t) { return g(t) * fj(t); });
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      a(j, static_cast<Eigen::Index>(i)) =
          integrate_range(prod, sys.domain(), pieces[i].lo, pieces[i].hi, rule.panels, rule.nodes);
    }
  }
  return a;
}

Matrix moment_matrix(const ChebSystem& sys, const Func1D& g,
                     std::span<const double> breakpoints, const QuadSpec& quad) {
  const auto pieces = standard_pieces(sys.domain(), breakpoints);
  return moment_matrix(sys, g, pieces, quad);
}

Vector null_direction(const Matrix& a) {
  require(a.rows() >= 1, "null_direction needs at least one row");
  require(a.cols() == a.rows() + 1, "null_direction expects an n x (n + 1) matrix");
  // Equilibrate rows, then columns. Row scaling leaves the kernel alone and
  // column scaling is undone below, so the rank test sees the conditioning of
  // the problem rather than the spread of magnitudes across pieces.
  Matrix b = a;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    const double r = b.row(i).norm();
    if (r == 0.0) diagnostic("moment matrix is rank deficient: system not Chebyshev on these pieces");
    b.row(i) /= r;
  }
  Vector col(b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    col(j) = b.col(j).norm();
    if (col(j) == 0.0) diagnostic("moment matrix is rank deficient: system not Chebyshev on these pieces");
    b.col(j) /= col(j);
  }
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullV);
  const Vector s = svd.singularValues();
  if (s(s.size() - 1) <= 1e-12 * s(0)) {
    diagnostic("moment matrix is rank deficient: system not Chebyshev on these pieces");
  }
  const Vector y = svd.matrixV().col(b.cols() - 1);
  if ((b * y).norm() > 1e-10 * s(0)) {
    diagnostic("kernel direction does not annihilate the moment matrix");
  }
  Vector p = y.cwiseQuotient(col);
  return fix_sign(p / p.norm());
}

double SynthResult::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, std::abs(r));
  return m;
}

SynthResult synth_orthogonal(const ChebSystem& sys, std::span<const double> points,
                             const QuadSpec& quad) {
  const Domain& dom = sys.domain();
  const int m = m_of(dom, sys.order());
  require(static_cast<int>(points.size()) == m,
          "need exactly m(D, n) = " + std::to_string(m) + " points");
  check_ordered(points, dom);

  const Func1D g = natural_annihilator(points, dom);
  SynthResult res;
  res.step.dom = dom;
  res.step.breakpoints.assign(points.begin(), points.end());
  res.step.pieces = standard_pieces(dom, points);
  const Matrix a = moment_matrix(sys, g, res.step.pieces, quad);
  const Vector p = null_direction(a);
  check_same_sign(p, 1e-12);
  res.step.heights = to_std(p);

  const Func1D step = res.step.as_func();
  res.function =
      Func1D([g, step](double t) { return g(t) * step(t); }, "orthogonal", res.step.breakpoints);
  res.residuals = piecewise_residuals(sys, res.function, res.step.pieces, quad);
  if (res.max_residual() > kResidualTol) {
    diagnostic("orthogonality residual " + std::to_string(res.max_residual()) +
               " exceeds tolerance");
  }
  res.sign_report = count_sign_changes(res.function, dom);
  if (res.sign_report.count != m) {
    diagnostic("synthesized function has " + std::to_string(res.sign_report.count) +
               " sign changes, expected " + std::to_string(m));
  }
  for (int i = 0; i < m; ++i) {
    double d = std::abs(res.sign_report.locations[i] - points[i]);
    if (dom.is_circle()) d = std::min(d, kTwoPi - d);
    if (d > 1e-6) diagnostic("sign change misplaced near " + std::to_string(points[i]));
  }
  return res;
}

SynthResult synth_weight(const ChebSystem& sys, const Func1D& f, const QuadSpec& quad) {
  const Domain& dom = sys.domain();
  const int m = m_of(dom, sys.order());
  SynthResult res;
  res.sign_report = count_sign_changes(f, dom);
  const auto& x = res.sign_report.locations;
  const int q = res.sign_report.count;
  if (res.sign_report.degenerate || q < m) {
    invalid_input("f changes sign " + std::to_string(q) + " times; an orthogonalizing weight needs " +
                  "at least m(D, n) = " + std::to_string(m));
  }

  res.step.dom = dom;
  if (q == m) {
    res.step.breakpoints = x;
    res.step.pieces = standard_pieces(dom, x);
  } else if (!dom.is_circle()) {
    // Keep the first m sign changes; the weight vanishes from x[m] onward.
    res.narrowed = true;
    res.step.breakpoints.assign(x.begin(), x.begin() + m);
    double left = dom.lo();
    for (int i = 0; i <= m; ++i) {
      res.step.pieces.push_back({left, x[i]});
      left = x[i];
    }
  } else {
    // The circle narrows to the arc (x[0], x[m]) cut at x[1..m-1].
    res.narrowed = true;
    res.step.breakpoints.assign(x.begin() + 1, x.begin() + m);
    for (int i = 0; i < m; ++i) res.step.pieces.push_back({x[i], x[i + 1]});
  }

  const Func1D g([f](double t) {
    const double v = f(t);
    return v * std::abs(v);
  }, "f|f|", x);
  const Matrix a = moment_matrix(sys, g, res.step.pieces, quad);
  const Vector p = null_direction(a);
  // Heights offset the growth of |f| between sign changes and may span many
  // orders of magnitude; strict positivity plus the residual check below is
  // the test here.
  check_same_sign(p, 0.0);
  res.step.heights = to_std(p);

  const Func1D step = res.step.as_func();
  std::vector<double> kinks(step.kinks().begin(), step.kinks().end());
  kinks.insert(kinks.end(), x.begin(), x.end());
  res.function = Func1D([f, step](double t) { return step(t) * std::abs(f(t)); }, "weight",
                        std::move(kinks));
  const Func1D weighted([f, rho = res.function](double t) { return f(t) * rho(t); });
  res.residuals = piecewise_residuals(sys, weighted, res.step.pieces, quad);
  if (res.max_residual() > kResidualTol) {
    diagnostic("weighted orthogonality residual " + std::to_string(res.max_residual()) +
               " exceeds tolerance");
  }
  return res;
}

WeightedSignReport weighted_orthogonality_check(const ChebSystem& sys, const Func1D& f, const Func1D& rho,
                              const QuadSpec& quad, double tol) {
  WeightedSignReport rep;
  const Domain& dom = sys.domain();
  rep.bound = m_of(dom, sys.order());
  for (const auto& fj : sys.basis()) {
    rep.max_residual = std::max(rep.max_residual, std::abs(inner_product(f, fj, rho, dom, quad)));
  }
  const auto weighted = count_sign_changes(product(f, rho), dom);
  if (weighted.degenerate) {
    rep.status = CheckStatus::Degenerate;
    return rep;
  }
  if (rep.max_residual > tol) {
    rep.status = CheckStatus::NotApplicable;
    return rep;
  }
  rep.sign_changes = count_sign_changes(f, dom).count;
  rep.status = rep.sign_changes >= rep.bound ? CheckStatus::Pass : CheckStatus::Fail;
  return rep;
}

}  // namespace chebz
