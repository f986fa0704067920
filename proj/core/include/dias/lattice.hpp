#pragma once

#include "dias/constants.hpp"
#include "dias/plane.hpp"
#include "dias/report.hpp"

namespace dias {

struct LatticeBasis {
  PlanePoint b1;
  PlanePoint b2;

  constexpr double det() const { return cross(b1, b2); }
};

// The hexagonal lattice spanned by (1,0) and (1/2, sqrt3/2).
inline constexpr LatticeBasis kHex{{1.0, 0.0}, {0.5, kHexHeight}};

// A point of the hexagonal torus, stored as its representative in the
// fundamental rectangle [0,1) x [0, sqrt3/2).
struct TorusPoint {
  PlanePoint p;
};

// Canonical representative of q modulo the hexagonal lattice. The height is
// normalized with b2 steps first, then the abscissa with b1 steps. Points
// already inside the rectangle are returned unchanged, so the map is idempotent.
TorusPoint reduce_mod_hex(const PlanePoint& q);

// Lagrange-Gauss reduction. The result spans the same lattice, satisfies
// |b1| <= |b2| and |<b1,b2>| <= |b1|^2/2, and b1 is a shortest nonzero vector.
LatticeBasis lagrange_reduce(const LatticeBasis& basis);

// Homotopy systole of the flat torus R^2/L: the shortest nonzero lattice vector.
double flat_torus_systole(const LatticeBasis& basis);

// Loewner's inequality area >= (sqrt3/2) sys^2 for the flat torus of `basis`.
// Reported as lhs = sqrt3/2, rhs = area/sys^2; `equality` is set when the two
// agree within `tolerance`.
InequalityReport loewner_check(const LatticeBasis& basis, double tolerance = 1e-12);

}  // namespace dias
