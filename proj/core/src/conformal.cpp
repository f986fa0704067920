#include "dias/conformal.hpp"

#include <cmath>

#include "dias/constants.hpp"
#include "dias/errors.hpp"
#include "dias/quadrature.hpp"

namespace dias {

namespace {

constexpr double kSingularTolerance = 1e-12;
constexpr int kCircleNodes = 512;
constexpr int kRayNodes = 64;

double product_modulus(Complex z) {
  return std::abs(z + 1.0) * std::abs(z) * std::abs(z - 1.0);
}

void require_regular(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidInput("point must be finite");
  }
  for (double a : kSingularPoints) {
    if (std::abs(z - a) < kSingularTolerance) throw SingularityError("density is singular at a cone point");
  }
}

double sqrt_density(Complex z) { return std::pow(product_modulus(z), -2.0 / 3.0); }

// Length of the ray center + i*dir*rho, 0 <= rho <= r. rho = r t^3 absorbs
// the rho^{-2/3} singularity at a cone point.
double ray_length(Complex center, double r, double dir) {
  const QuadratureRule rule = composite_gauss(kRayNodes, 8);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    if (t == 0.0) continue;
    const double rho = r * t * t * t;
    sum += rule.weights[i] * sqrt_density(center + Complex(0.0, dir * rho)) * 3.0 * r * t * t;
  }
  return sum;
}

}  // namespace

double density(Complex z) {
  require_regular(z);
  return std::pow(product_modulus(z), -4.0 / 3.0);
}

double cone_angle_estimate(Complex center, double r) {
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) {
    throw InvalidInput("centre must be finite");
  }
  if (!std::isfinite(r) || r <= 0.0 || r >= 0.5) throw InvalidRadius("radius must lie in (0, 0.5)");
  for (double a : kSingularPoints) {
    const double d = std::abs(center - a);
    if (d < kSingularTolerance) {
      center = a;
    } else if (d <= r) {
      throw InvalidRadius("disk around a regular centre contains a cone point");
    }
  }
  // periodic trapezoid rule on the circle
  double circumference = 0.0;
  for (int k = 0; k < kCircleNodes; ++k) {
    const double theta = 2.0 * kPi * (k + 0.5) / kCircleNodes;
    circumference += sqrt_density(center + std::polar(r, theta));
  }
  circumference *= 2.0 * kPi * r / kCircleNodes;
  const double radius = 0.5 * (ray_length(center, r, 1.0) + ray_length(center, r, -1.0));
  return circumference / radius;
}

RoundDensity round_density_relation(Complex z) {
  require_regular(z);
  const double q = 2.0 / (1.0 + std::norm(z));
  RoundDensity out;
  out.g0 = q * q;
  out.ratio = out.g0 * std::pow(product_modulus(z), 4.0 / 3.0);
  return out;
}

}  // namespace dias
