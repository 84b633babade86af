#pragma once

#include <span>
#include <string>
#include <vector>

#include "chebz/chebsys.hpp"
#include "chebz/check.hpp"
#include "chebz/funcspace.hpp"
#include "chebz/linalg.hpp"

namespace chebz {

// Minimal number of sign changes forced by orthogonality to an order-n system:
// n on an interval, n + 1 on the circle.
int m_of(const Domain& dom, int n);

// Half-open parameter span [lo, hi). On the circle hi may exceed 2*pi for the
// arc that wraps through 0.
struct Piece {
  double lo;
  double hi;
};

// Parameter t (already wrapped) lies in the piece.
bool in_piece(double t, const Piece& p, const Domain& dom);

// Gauss rule applied on each piece: the spec's panels as is, or for a
// trapezoid spec its node budget spread over the pieces in 16-node panels.
struct PieceRule {
  int panels;
  int nodes;
};
PieceRule piece_rule(const QuadSpec& quad, std::size_t pieces);

// Pieces cut by ordered breakpoints: q + 1 on an interval (the first one open
// at a), q arcs on the circle.
std::vector<Piece> standard_pieces(const Domain& dom, std::span<const double> breakpoints);

// Piecewise-constant function with one height per piece, zero off the pieces.
struct StepWeight {
  std::vector<double> breakpoints;
  std::vector<Piece> pieces;
  std::vector<double> heights;
  Domain dom = Domain::circle();

  int piece_of(double t) const;  // -1 off the support
  double operator()(double t) const;
  Func1D as_func() const;
};

// Entry (j, i) = integral over piece i of g * f_j.
Matrix moment_matrix(const ChebSystem& sys, const Func1D& g, std::span<const Piece> pieces,
                     const QuadSpec& quad);
Matrix moment_matrix(const ChebSystem& sys, const Func1D& g,
                     std::span<const double> breakpoints, const QuadSpec& quad);

// Unit kernel direction of an n x (n + 1) matrix, first component positive.
// Throws Diagnostic when the rank is below n.
Vector null_direction(const Matrix& a);

inline constexpr double kResidualTol = 1e-8;

struct SynthResult {
  Func1D function;  // orthogonal function F, or the weight rho
  StepWeight step;
  std::vector<double> residuals;  // one inner product per basis function
  SignChangeReport sign_report;
  bool narrowed = false;

  double max_residual() const;
};

// Function changing sign exactly at the m_of(dom, n) given points and
// orthogonal (unit weight) to the system.
SynthResult synth_orthogonal(const ChebSystem& sys, std::span<const double> points,
                             const QuadSpec& quad);

// Constant-sign weight rho making f orthogonal to the system.
SynthResult synth_weight(const ChebSystem& sys, const Func1D& f, const QuadSpec& quad);

struct WeightedSignReport {
  CheckStatus status = CheckStatus::NotApplicable;
  double max_residual = 0.0;
  int sign_changes = 0;
  int bound = 0;
};

// Orthogonal with weight rho and f*rho not numerically zero  =>  at least
// m_of(dom, n) sign changes.
WeightedSignReport weighted_orthogonality_check(const ChebSystem& sys, const Func1D& f, const Func1D& rho,
                              const QuadSpec& quad, double tol);

}  // namespace chebz
