#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dias/lattice.hpp"
#include "dias/plane.hpp"

namespace dias {

// --- Deck group -------------------------------------------------------------

// Deck rotation R^j of the hexagonal torus: rotation by j * 2pi/3 about the origin.
PlanePoint deck_rotate(const PlanePoint& q, int j = 1);
TorusPoint deck_rotate(const TorusPoint& q, int j = 1);

// The three fixed points of R on the torus, sorted by height.
struct FixedPointSet {
  std::array<TorusPoint, 3> points;
};

// p0 = (0,0), p1 = (1/2, 1/(2 sqrt3)), p2 = (0, 1/sqrt3).
FixedPointSet fixed_points();

// Lattice coordinates (theta1, theta2) with q = theta1 * b1 + theta2 * b2.
PlanePoint lattice_coordinates(const PlanePoint& q);

// Flat distance on the torus between the classes of two plane points.
double torus_distance(const PlanePoint& a, const PlanePoint& b);

// Distance on the Calabi sphere between the images of two plane points: the
// minimum over the deck group and lattice translations.
double sphere_distance(const PlanePoint& a, const PlanePoint& b);

// Distance on the sphere from the image of `p` to the image of segment [a, b].
double sphere_distance_to_segment(const PlanePoint& p, const PlanePoint& a, const PlanePoint& b);

// --- Conformal factor fields -----------------------------------------------

// cos(2pi <m k1 + n k2, q> + phase) with dual basis k1 = (1, -1/sqrt3), k2 = (0, 2/sqrt3).
struct FourierTerm {
  int m = 0;
  int n = 0;
  double amplitude = 0.0;
  double phase = 0.0;
};

struct FieldValue {
  double value = 0.0;
  PlanePoint gradient;
};

// A hexagonally periodic C^1 function u on the plane, describing the metric
// e^{2u} g_c after deck symmetrization. Terms are stored as given; the
// symmetrized flag makes evaluation average over the three deck rotations.
class ConformalFactorField {
 public:
  ConformalFactorField() { compile(); }

  static ConformalFactorField constant(double c);
  static ConformalFactorField fourier_sum(std::vector<FourierTerm> terms);

  ConformalFactorField operator+(const ConformalFactorField& other) const;
  ConformalFactorField scaled(double factor) const;

  double constant_term() const { return constant_; }
  const std::vector<FourierTerm>& terms() const { return terms_; }
  bool symmetrized() const { return symmetrized_; }

  // True when every Fourier coefficient of the evaluated field vanishes.
  bool is_constant() const { return table_.empty(); }

  FieldValue eval(const PlanePoint& q) const;
  double value(const PlanePoint& q) const;

 private:
  friend ConformalFactorField symmetrize(const ConformalFactorField& raw);

  struct Coefficient {
    int m;
    int n;
    double re;
    double im;
  };

  void compile();

  double constant_ = 0.0;
  double offset_ = 0.0;  // constant plus any (0,0) mode
  std::vector<FourierTerm> terms_;
  bool symmetrized_ = false;
  std::vector<Coefficient> table_;
  int max_m_ = 0;
  int max_n_ = 0;
};

// q -> (1/3) sum_j raw(R^j q). Idempotent.
ConformalFactorField symmetrize(const ConformalFactorField& raw);

FieldValue eval_field(const ConformalFactorField& u, const TorusPoint& q);

// (1/3) * integral of e^{2u} over the fundamental rectangle, periodic
// trapezoid rule on an n x n grid. Requires n >= 8.
double sphere_area(const ConformalFactorField& u, int n);

// Grid estimates of sup|e^u - 1| and sup|d/dy e^u| on an n x n grid of the
// fundamental rectangle (n >= 32). They approach the true suprema from below.
double sup_deviation(const ConformalFactorField& u, int n);
double sup_slope(const ConformalFactorField& u, int n);

// Mean and variance of u over the torus (periodic trapezoid rule, n >= 8).
struct FieldMoments {
  double mean = 0.0;
  double variance = 0.0;
};
FieldMoments field_moments(const ConformalFactorField& u, int n);

// --- Text format ---------------------------------------------------------------
//
//   # comment
//   const <c>
//   mode <m> <n> <amplitude> <phase>
//
// Multiple `const` lines add up. The loaded field is always symmetrized.

ConformalFactorField parse_field(std::string_view text);
ConformalFactorField load_field(const std::string& path);

// Canonical text with round-trip precision; parse_field(format_field(u)) == u.
std::string format_field(const ConformalFactorField& u);

// Hex SHA-256 of format_field(u).
std::string field_digest(const ConformalFactorField& u);

// --- Random fields ---------------------------------------------------------------

struct RandomFieldOptions {
  int max_index = 3;    // |m|, |n| <= max_index
  int term_count = 6;
  int sup_grid = 64;    // grid used to normalize the sup norm
};

// Seeded symmetrized field whose grid estimate of sup|u| equals `target_sup`.
ConformalFactorField random_field(std::uint64_t seed, double target_sup,
                                  const RandomFieldOptions& options = {});

}  // namespace dias
