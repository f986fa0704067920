#pragma once

#include <numbers>

namespace dias {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt3 = std::numbers::sqrt3;

// Height of the fundamental rectangle [0,1) x [0, sqrt3/2) of the hexagonal lattice.
inline constexpr double kHexHeight = kSqrt3 / 2.0;

// Spacing between consecutive rows of order-3 rotation centres: 1/(2 sqrt3).
inline constexpr double kRowSpacing = 1.0 / (2.0 * kSqrt3);

// Area of the Calabi sphere: two equilateral triangles of side 1/sqrt3.
inline constexpr double kCalabiArea = 1.0 / (2.0 * kSqrt3);

// tan(pi/6), the trapezoid slope constant.
inline constexpr double kTanPiOver6 = 1.0 / kSqrt3;

}  // namespace dias
