#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dias/cover.hpp"
#include "dias/plane.hpp"
#include "dias/quadrature.hpp"
#include "dias/report.hpp"

namespace dias {

// Loop sides shorter than this are treated as point cycles.
inline constexpr double kSideEpsilon = 1e-9;

// A closed polygon in the plane, read on the torus: the last vertex equals the
// first one up to a lattice translation. `center` is set for components that
// are invariant under the order-3 rotation about it.
struct LiftComponent {
  std::vector<PlanePoint> vertices;
  std::optional<PlanePoint> center;

  std::size_t edge_count() const { return vertices.size() < 2 ? 0 : vertices.size() - 1; }
};

// A one-cycle on the sphere given by planar lifts. Its length is `weight`
// times the length of the lifted polygons: weight 1 for curves the cover maps
// injectively, 1/3 for deck-invariant polygons covering their image three times.
struct OneCycleLift {
  std::vector<LiftComponent> components;
  double weight = 1.0;
};

// l_{g_c}: flat length on the sphere.
double flat_length(const OneCycleLift& cycle);

// l_g for g = e^{2u} g_c, by composite Gauss-Legendre along every edge. For a
// deck-invariant field and rotation-invariant components only one edge per
// rotation orbit is integrated unless `all_edges` is set.
double metric_length(const OneCycleLift& cycle, const ConformalFactorField& u,
                     const QuadratureParams& quad = {}, bool all_edges = false);

// Integral of e^u along the segment [a, b] with respect to arc length.
double segment_metric_length(const PlanePoint& a, const PlanePoint& b,
                             const ConformalFactorField& u, const QuadratureRule& rule);

// Hausdorff distance between the images of two cycles on the sphere, with
// each edge sampled at `samples` points. Exact for the sampled points.
double sphere_hausdorff(const OneCycleLift& a, const OneCycleLift& b, int samples = 16);

// The closed geodesic gamma_s: horizontal unit segment from (0,s) to (1,s).
OneCycleLift gamma(double s);

// Geometry of gamma_s relative to the rows of rotation centres. Rows sit at
// heights j/(2 sqrt3) with x-offset (j mod 2)/2; row j projects to fixed point
// p_{j mod 3}. For s in row interval k the horizontal line splits into the
// low side (the chord of the triangle about the centre below) and the high
// side (chord of the triangle about the centre above).
struct SweepFrame {
  double s = 0.0;           // construction height (snapped at special heights)
  int k = 0;                // row interval
  double a_low = 0.0;
  double a_high = 1.0;
  PlanePoint c_low;         // row k
  PlanePoint c_high;        // row k + 1
  PlanePoint target;        // row k + 2, contraction target above the line
  PlanePoint target_below;  // row k - 1, the same cone point below the high side
  std::array<PlanePoint, 2> low_side;   // left to right, length a_low
  std::array<PlanePoint, 2> high_side;  // left to right, length a_high
  bool special = false;     // the line meets a cone point (First case)
};

// Requires 0 <= s <= sqrt3/2. Heights within 1e-12 of a row (relative to the
// row spacing), or whose short side is below kSideEpsilon, are snapped onto the row.
SweepFrame sweep_frame(double s);

struct SplitLengths {
  int k = 0;
  double a_low = 0.0;
  double a_high = 0.0;
  std::array<int, 2> encircled{};  // fixed-point indices of c_low, c_high
  int contraction_target = 0;
};

// Second-case decomposition of the figure-eight gamma_s. Throws SpecialHeight
// when s meets a cone point; callers then use the First case.
SplitLengths split_lengths(double s);

enum class SweepCase { kFirst, kSecond };

struct SweepCycle {
  double s = 0.0;
  double alpha = 0.0;
  SweepCase sweep_case = SweepCase::kSecond;
  int k = 0;
  double a_low = 0.0;
  double a_high = 1.0;
  OneCycleLift cycle;
};

// z_s^alpha. For alpha <= 1/2: the triangles about c_low and c_high whose
// sides are the two loops of gamma_s, scaled by 2 alpha. For alpha > 1/2: the
// equiangular hexagon with sides a_low, a_high developed from
// gamma_1 * gamma_2^{-1} about the target, scaled by 2 - 2 alpha.
SweepCycle sweep_cycle(double s, double alpha);

// Region between a side of gamma_s and the matching side of z_s^alpha, with
// straight legs towards the homothety centre.
struct TrapezoidDomain {
  int component = 0;  // 0: low side, 1: high side
  PlanePoint outer_start, outer_end;  // lift of gamma_{i,s}, left to right
  PlanePoint inner_start, inner_end;  // lift of z^alpha_{i,s}
  PlanePoint center;
  double ratio = 1.0;   // homothety ratio of the inner arc
  int orientation = 1;  // +1: domain below the outer arc, -1: above

  double outer_length() const { return distance(outer_start, outer_end); }
  double inner_length() const { return distance(inner_start, inner_end); }
  double height() const { return std::abs(outer_start.y - inner_start.y); }
  // (1/2)(L + l) H
  double area() const;
  // (1/4) tan(pi/6) (L^2 - l^2): equals area() when the outer arc is a side of
  // the equilateral triangle about `center`.
  double triangle_formula_area() const;
  // Counter-clockwise vertex loop for shoelace checks.
  std::array<PlanePoint, 4> polygon() const;
};

// Both component domains; degenerate components come back with zero lengths.
std::vector<TrapezoidDomain> trapezoid_domains(double s, double alpha);

struct StokesTerms {
  int component = 0;
  double outer = 0.0;       // l_g(gamma_{i,s})
  double inner = 0.0;       // l_g(z^alpha_{i,s})
  double legs = 0.0;        // integral of e^u dx over the two legs
  double area_term = 0.0;   // signed integral of d/dy e^u over the domain
  double residual = 0.0;    // |outer - inner - legs - area_term|
};

std::vector<StokesTerms> stokes_residual(const ConformalFactorField& u, double s, double alpha,
                                         const QuadratureParams& quad = {});

// Grid estimates entering the lower bound.
struct SupEstimates {
  double deviation = 0.0;  // sup|e^u - 1|
  double slope = 0.0;      // sup|d/dy e^u|
};

// Per component: l_g(gamma_i) - l_g(z_i) >= factor * (l_gc(gamma_i) - l_gc(z_i))
// with factor = 1 - deviation - (1/(2 sqrt3)) slope. Reported as
// lhs = factor * flat difference, rhs = metric difference, for the component
// with the smaller margin. Verdict is outside-regime when factor <= 0.
InequalityReport stokes_lower_bound_check(const ConformalFactorField& u, double s, double alpha,
                                          const SupEstimates& sups,
                                          const QuadratureParams& quad = {}, double tol = 1e-10);
InequalityReport stokes_lower_bound_check(const ConformalFactorField& u, double s, double alpha,
                                          int n, const QuadratureParams& quad = {},
                                          double tol = 1e-10);

}  // namespace dias
