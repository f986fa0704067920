#include "dias/lattice.hpp"

#include <cmath>
#include <utility>

#include "dias/errors.hpp"

namespace dias {

namespace {

constexpr double kMinDet = 1e-12;

void require_nondegenerate(const LatticeBasis& basis) {
  if (!is_finite(basis.b1) || !is_finite(basis.b2)) {
    throw InvalidInput("lattice basis has non-finite entries");
  }
  if (!(std::abs(basis.det()) > kMinDet)) {
    throw DegenerateLattice("lattice basis is degenerate (|det| <= 1e-12)");
  }
}

}  // namespace

TorusPoint reduce_mod_hex(const PlanePoint& q) {
  if (!is_finite(q)) throw InvalidInput("cannot reduce a non-finite point");
  PlanePoint p = q;
  if (!(p.y >= 0.0 && p.y < kHexHeight)) {
    const double j = std::floor(p.y / kHexHeight);
    p -= j * kHex.b2;
    // floor() can be off by one ulp near the rectangle edges.
    while (p.y >= kHexHeight) p -= kHex.b2;
    while (p.y < 0.0) p += kHex.b2;
  }
  if (!(p.x >= 0.0 && p.x < 1.0)) {
    p.x -= std::floor(p.x);
    if (p.x >= 1.0) p.x = 0.0;
  }
  return {p};
}

LatticeBasis lagrange_reduce(const LatticeBasis& basis) {
  require_nondegenerate(basis);
  PlanePoint u = basis.b1;
  PlanePoint v = basis.b2;
  if (dot(u, u) > dot(v, v)) std::swap(u, v);
  // Each pass strictly shortens v; the bound only guards against NaN-driven loops.
  for (int iter = 0; iter < 10000; ++iter) {
    const double mu = std::round(dot(u, v) / dot(u, u));
    v -= mu * u;
    if (dot(v, v) >= dot(u, u)) break;
    std::swap(u, v);
  }
  return {u, v};
}

double flat_torus_systole(const LatticeBasis& basis) { return norm(lagrange_reduce(basis).b1); }

InequalityReport loewner_check(const LatticeBasis& basis, double tolerance) {
  const LatticeBasis reduced = lagrange_reduce(basis);
  const double area = std::abs(basis.det());
  const double sys = norm(reduced.b1);
  const double ratio = area / (sys * sys);
  InequalityReport r = make_report("loewner", kHexHeight, ratio, tolerance);
  r.equality = std::abs(ratio - kHexHeight) < tolerance;
  r.values = {{"area", area}, {"sys", sys}, {"ratio", ratio}};
  r.settings = {{"tolerance", tolerance}};
  return r;
}

}  // namespace dias
