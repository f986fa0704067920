#pragma once

#include <cmath>

namespace dias {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  constexpr PlanePoint& operator+=(const PlanePoint& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr PlanePoint& operator-=(const PlanePoint& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

constexpr PlanePoint operator+(PlanePoint a, const PlanePoint& b) { return a += b; }
constexpr PlanePoint operator-(PlanePoint a, const PlanePoint& b) { return a -= b; }
constexpr PlanePoint operator-(const PlanePoint& a) { return {-a.x, -a.y}; }
constexpr PlanePoint operator*(double k, const PlanePoint& a) { return {k * a.x, k * a.y}; }
constexpr PlanePoint operator*(const PlanePoint& a, double k) { return {k * a.x, k * a.y}; }

constexpr double dot(const PlanePoint& a, const PlanePoint& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const PlanePoint& a, const PlanePoint& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const PlanePoint& a) { return std::hypot(a.x, a.y); }
inline double distance(const PlanePoint& a, const PlanePoint& b) { return norm(a - b); }
inline bool is_finite(const PlanePoint& a) { return std::isfinite(a.x) && std::isfinite(a.y); }

// Counter-clockwise rotation of `p` by `angle` radians about `center`.
inline PlanePoint rotate_about(const PlanePoint& p, const PlanePoint& center, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const PlanePoint d = p - center;
  return center + PlanePoint{c * d.x - s * d.y, s * d.x + c * d.y};
}

// Homothety of ratio `factor` about `center`.
constexpr PlanePoint scale_about(const PlanePoint& p, const PlanePoint& center, double factor) {
  return center + factor * (p - center);
}

// Euclidean distance from `p` to the closed segment [a, b].
inline double point_segment_distance(const PlanePoint& p, const PlanePoint& a,
                                     const PlanePoint& b) {
  const PlanePoint ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  double t = dot(p - a, ab) / len2;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return distance(p, a + t * ab);
}

}  // namespace dias

namespace dias {

// Rotation by j * 2pi/3 about `center`, with exact cos/sin constants.
inline PlanePoint rotate_third(const PlanePoint& p, const PlanePoint& center, int j) {
  constexpr double c = -0.5;
  constexpr double s = 0.86602540378443864676;  // sqrt3 / 2
  PlanePoint d = p - center;
  const int turns = ((j % 3) + 3) % 3;
  for (int t = 0; t < turns; ++t) d = {c * d.x - s * d.y, s * d.x + c * d.y};
  return center + d;
}

}  // namespace dias
