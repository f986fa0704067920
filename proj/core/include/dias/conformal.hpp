#pragma once

#include <array>
#include <complex>

namespace dias {

using Complex = std::complex<double>;

// Cone points of the Calabi metric in conformal coordinates.
inline constexpr std::array<double, 3> kSingularPoints = {-1.0, 0.0, 1.0};

// lambda(z) = (|z+1| |z| |z-1|)^{-4/3}, the density of g_c = lambda |dz|^2 up to
// scale. Throws SingularityError within 1e-12 of a cone point.
double density(Complex z);

// Metric circumference of |z - center| = r divided by the metric radius; the
// radius is the mean length of the two vertical rays from the centre, which
// cancels the first-order drift of the density at regular points. Tends to
// the cone angle as r -> 0. Requires 0 < r < 0.5 and, for a regular centre,
// a disk free of cone points; otherwise throws InvalidRadius.
double cone_angle_estimate(Complex center, double r);

struct RoundDensity {
  double g0 = 0.0;     // (2 / (1 + |z|^2))^2
  double ratio = 0.0;  // g0 / lambda
};

RoundDensity round_density_relation(Complex z);

}  // namespace dias
