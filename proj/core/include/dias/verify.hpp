#pragma once

#include <vector>

#include "dias/cover.hpp"
#include "dias/quadrature.hpp"
#include "dias/report.hpp"

namespace dias {

struct VerifySettings {
  int resolution = 128;     // grid for sup norms, area and moments
  int s_points = 64;
  int alpha_points = 129;
  double safety = 1.05;     // inflation of both grid sup estimates
  double tol = 1e-8;
  QuadratureParams quad{};
};

// (i + 1/2) * (sqrt3/2) / count: stays off the special heights for even counts.
std::vector<double> default_s_grid(int count = 64);
// i / (count - 1); contains 1/2 for odd counts.
std::vector<double> default_alpha_grid(int count = 129);

// Membership of u in the neighbourhood where the sweep length estimate holds:
// margin = 1 - safety * dev - (1/(2 sqrt3)) * safety * slope > 0.
struct NeighborhoodCertificate {
  double sup_dev = 0.0;
  double sup_slope = 0.0;
  double margin = 0.0;
  int resolution = 0;
  double safety = 1.0;
  bool valid = false;
};

NeighborhoodCertificate neighborhood_certificate(const ConformalFactorField& u, int n,
                                                 double safety = 1.05);

// Averaging argument over the geodesics gamma_s.
//   identity:       int_0^{sqrt3/2} l_g(gamma_s) ds against the torus integral of e^u
//                   (two sided, |lhs - rhs| <= tol)
//   cauchy_schwarz: torus integral of e^u <= 3 sqrt(area(g)) sqrt(area(g_c))
//   corollary:      (min_s l_g(gamma_s))^2 <= 2 sqrt3 area(g), min over the s grid
struct AveragedChecks {
  InequalityReport identity;
  InequalityReport cauchy_schwarz;
  InequalityReport corollary;
  double min_gamma_length = 0.0;
  double s_min = 0.0;
};

AveragedChecks averaged_inequality_check(const ConformalFactorField& u,
                                         const VerifySettings& settings = {});

struct DiastoleBound {
  double upper = 0.0;            // U = min_s max_alpha l_g(z_s^alpha)
  double s_star = 0.0;
  double gamma_at_s_star = 0.0;  // l_g(gamma_{s_star})
  double min_gamma = 0.0;        // min over the s grid of l_g(gamma_s)
  double max_excess = 0.0;       // max over the grid of l_g(z_s^alpha) - l_g(gamma_s)
  bool chain_holds = false;      // max_excess <= tol and U <= min_gamma + tol
};

DiastoleBound diastole_upper_bound(const ConformalFactorField& u, const std::vector<double>& s_grid,
                                   const std::vector<double>& alpha_grid,
                                   const QuadratureParams& quad = {}, double tol = 1e-8);

// The diastolic area inequality U^2 <= 2 sqrt3 area(g). Verdict is
// outside-regime when the certificate is invalid; the numbers are still filled.
struct TheoremResult {
  InequalityReport report;
  NeighborhoodCertificate certificate;
  DiastoleBound bound;
  double area = 0.0;
  double variance = 0.0;
};

TheoremResult theorem_check(const ConformalFactorField& u, const VerifySettings& settings = {});

}  // namespace dias
