#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chebz/check.hpp"
#include "chebz/curves.hpp"
#include "chebz/linalg.hpp"

namespace chebz {

// Ordered vertices in R^d; index arithmetic is cyclic when closed.
struct PolyLine {
  std::vector<Point> vertices;
  bool closed = true;

  int dim() const { return vertices.empty() ? 0 : static_cast<int>(vertices[0].size()); }
  int size() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return closed ? size() : size() - 1; }
};

// Throws on mixed dimensions, fewer than two vertices or repeated
// consecutive vertices.
void validate(const PolyLine& p);

using MassVector = std::vector<double>;

struct CyclicCount {
  int count = 0;
  bool degenerate = false;  // every entry was dropped as zero
};

// Entries with |v| <= tol_rel * max|v| are dropped; adjacent opposite signs
// in what remains are counted, once more across the wrap when closed.
CyclicCount cyclic_sign_changes(std::span<const double> values, bool closed,
                                double tol_rel = kDefaultZeroTol);

struct PolylineVerdict {
  ChebVerdict::Status status = ChebVerdict::Status::NoViolationFound;
  std::optional<Hyperplane> witness;
  int witness_count = 0;
  int trials_run = 0;
  // Closed planar input only: every turn strict and of one sign, one full turn.
  std::optional<bool> certified_convex;

  bool passed() const noexcept { return status == ChebVerdict::Status::NoViolationFound; }
};

// Edges whose endpoint values of <normal, x> - offset have strict opposite signs.
int polyline_crossings(const PolyLine& p, const Hyperplane& h);

// Seeded search for a vertex-avoiding hyperplane cutting more than d edges:
// random hyperplanes plus hyperplanes through perturbed edge midpoints. Closed
// planar polygons also go through the exact turn-sign test, and a reflex
// vertex yields a line squeezed between it and its neighbours' chord.
PolylineVerdict polyline_convexity_check(const PolyLine& p, int trials = kDefaultChebTrials,
                                         std::uint64_t seed = 0);

// Entry (alpha, i) = x_i^alpha over multi-indices |alpha| <= n.
Matrix vandermonde_moment_matrix(const PolyLine& p, int n);

inline constexpr double kMassResidualTol = 1e-10;

// Seeded random unit vector in the kernel of the moment matrix.
MassVector construct_masses(const PolyLine& p, int n, std::uint64_t seed);

struct MassSignReport {
  CheckStatus status = CheckStatus::NotApplicable;
  double max_residual = 0.0;
  int sign_changes = 0;
  int bound = 0;
  std::string note;
};

// Masses annihilating every polynomial of degree <= n on a convex polyline
// change sign at least d n + 1 times (d n + 2 when closed).
MassSignReport polyline_moment_sign_check(const PolyLine& p, int n, std::span<const double> f,
                                          double tol = kMassResidualTol,
                                          int convexity_trials = 100);

// Two positive mass vectors with equal totals and centers: f - g changes sign
// at least d + 1 times (d + 2 when closed).
MassSignReport equal_center_masses_check(const PolyLine& p, std::span<const double> f,
                                         std::span<const double> g, double tol = 1e-9);

// Closed convex polygon with vertices on a random strictly convex curve at
// jittered angles.
PolyLine random_convex_polygon(int k, std::uint64_t seed);

// Unit outward normals (angularly sorted, every gap below pi) and positive
// side lengths to a counterclockwise polygon starting at the origin.
PolyLine polygon_from_normals(std::span<const Point> normals, std::span<const double> lengths);

struct SideData {
  std::vector<Point> normals;
  std::vector<double> lengths;
};
SideData polygon_sides(const PolyLine& p);

// Two polygons with the same random normal fan and equal perimeters.
std::pair<PolyLine, PolyLine> random_shared_fan_pair(int k, std::uint64_t seed);

struct SideLengthReport {
  CheckStatus status = CheckStatus::NotApplicable;
  std::vector<double> differences;
  int sign_changes = 0;
  int bound = 4;
  std::string note;
  // Differences read as masses at the unit normals (the normal polygon).
  MassSignReport normal_polygon;
};

// Convex polygons with parallel sides and equal perimeters: the differences
// of corresponding side lengths change sign at least four times.
SideLengthReport parallel_sides_check(const PolyLine& m1, const PolyLine& m2, double tol = 1e-9);

}  // namespace chebz
