#include "dias/cover.hpp"

#include <algorithm>
#include <limits>

namespace dias {

PlanePoint deck_rotate(const PlanePoint& q, int j) { return rotate_third(q, {0.0, 0.0}, j); }

TorusPoint deck_rotate(const TorusPoint& q, int j) { return reduce_mod_hex(deck_rotate(q.p, j)); }

FixedPointSet fixed_points() {
  return {{TorusPoint{{0.0, 0.0}}, TorusPoint{{0.5, kRowSpacing}},
           TorusPoint{{0.0, 2.0 * kRowSpacing}}}};
}

PlanePoint lattice_coordinates(const PlanePoint& q) {
  return {q.x - q.y / kSqrt3, 2.0 * q.y / kSqrt3};
}

namespace {

// Smallest |v + lattice vector| over a box of translations around the
// rectangle representative of v.
double torus_norm(const PlanePoint& v, int box) {
  const PlanePoint p = reduce_mod_hex(v).p;
  double best = std::numeric_limits<double>::infinity();
  for (int m = -box; m <= box; ++m) {
    for (int n = -box; n <= box; ++n) {
      best = std::min(best, norm(p - m * kHex.b1 - n * kHex.b2));
    }
  }
  return best;
}

}  // namespace

double torus_distance(const PlanePoint& a, const PlanePoint& b) { return torus_norm(a - b, 2); }

double sphere_distance(const PlanePoint& a, const PlanePoint& b) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j) best = std::min(best, torus_norm(a - deck_rotate(b, j), 2));
  return best;
}

double sphere_distance_to_segment(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b) {
  const PlanePoint mid = 0.5 * (a + b);
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j) {
    const PlanePoint d = reduce_mod_hex(deck_rotate(p, j) - mid).p;
    for (int m = -3; m <= 3; ++m) {
      for (int n = -3; n <= 3; ++n) {
        const PlanePoint x = mid + d - m * kHex.b1 - n * kHex.b2;
        best = std::min(best, point_segment_distance(x, a, b));
      }
    }
  }
  return best;
}

}  // namespace dias
