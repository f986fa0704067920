#include "dias/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dias/constants.hpp"
#include "dias/errors.hpp"
#include "dias/sweep.hpp"

namespace dias {

namespace {

constexpr double kEqualityRelative = 1e-7;
constexpr double kVarianceThreshold = 1e-10;

void require_resolution(int n) {
  if (n < 64) throw ResolutionError("verification grids need at least 64 points per direction");
}

std::vector<std::pair<std::string, double>> settings_echo(const VerifySettings& s) {
  return {{"resolution", static_cast<double>(s.resolution)},
          {"s_points", static_cast<double>(s.s_points)},
          {"alpha_points", static_cast<double>(s.alpha_points)},
          {"safety", s.safety},
          {"tol", s.tol},
          {"quad_nodes", static_cast<double>(s.quad.nodes)},
          {"quad_panel_order", static_cast<double>(s.quad.panel_order)}};
}

// Periodic trapezoid rule for the integral of e^u over the fundamental rectangle.
double torus_integral_exp(const ConformalFactorField& u, int n) {
  CompensatedSum sum;
  for (int j = 0; j < n; ++j) {
    const double y = kHexHeight * j / n;
    double row = 0.0;
    for (int i = 0; i < n; ++i) row += std::exp(u.value({static_cast<double>(i) / n, y}));
    sum.add(row);
  }
  return sum.value() * kHexHeight / (static_cast<double>(n) * n);
}

}  // namespace

std::vector<double> default_s_grid(int count) {
  if (count < 1) throw InvalidInput("s grid needs at least one point");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = (i + 0.5) * kHexHeight / count;
  return out;
}

std::vector<double> default_alpha_grid(int count) {
  if (count < 2) throw InvalidInput("alpha grid needs at least two points");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = static_cast<double>(i) / (count - 1);
  out.back() = 1.0;
  return out;
}

NeighborhoodCertificate neighborhood_certificate(const ConformalFactorField& u, int n,
                                                 double safety) {
  require_resolution(n);
  if (!(safety >= 1.0) || !std::isfinite(safety)) throw InvalidInput("safety factor must be >= 1");
  NeighborhoodCertificate c;
  c.resolution = n;
  c.safety = safety;
  c.sup_dev = sup_deviation(u, n);
  c.sup_slope = sup_slope(u, n);
  c.margin = 1.0 - safety * c.sup_dev - kRowSpacing * safety * c.sup_slope;
  c.valid = c.margin > 0.0;
  return c;
}

AveragedChecks averaged_inequality_check(const ConformalFactorField& u,
                                         const VerifySettings& settings) {
  require_resolution(settings.resolution);
  const int n = settings.resolution;
  AveragedChecks out;

  // Gauss-Legendre in s over gamma lengths, versus the periodic grid.
  const QuadratureRule rule = composite_gauss(n, settings.quad.panel_order);
  CompensatedSum in_s;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    in_s.add(rule.weights[i] * metric_length(gamma(kHexHeight * rule.nodes[i]), u, settings.quad));
  }
  const double by_geodesics = in_s.value() * kHexHeight;
  const double torus = torus_integral_exp(u, n);
  const double area = sphere_area(u, n);

  out.identity = make_report("averaging_identity", by_geodesics, torus, settings.tol);
  out.identity.margin = -std::abs(by_geodesics - torus);
  out.identity.verdict =
      std::abs(by_geodesics - torus) <= settings.tol ? Verdict::kHolds : Verdict::kFails;
  out.identity.settings = settings_echo(settings);

  const double cs_rhs = 3.0 * std::sqrt(area) * std::sqrt(kCalabiArea);
  out.cauchy_schwarz = make_report("cauchy_schwarz", torus, cs_rhs, settings.tol);
  out.cauchy_schwarz.values = {{"area", area}};
  out.cauchy_schwarz.settings = settings_echo(settings);

  double best = std::numeric_limits<double>::infinity();
  for (double s : default_s_grid(settings.s_points)) {
    const double len = metric_length(gamma(s), u, settings.quad);
    if (len < best) {
      best = len;
      out.s_min = s;
    }
  }
  out.min_gamma_length = best;
  out.corollary = make_report("averaged_corollary", best * best, 2.0 * kSqrt3 * area, settings.tol);
  out.corollary.values = {{"min_gamma_length", best}, {"s_min", out.s_min}, {"area", area}};
  out.corollary.settings = settings_echo(settings);
  return out;
}

DiastoleBound diastole_upper_bound(const ConformalFactorField& u, const std::vector<double>& s_grid,
                                   const std::vector<double>& alpha_grid,
                                   const QuadratureParams& quad, double tol) {
  if (s_grid.empty() || alpha_grid.empty()) throw InvalidInput("sweep grids must be nonempty");
  DiastoleBound b;
  b.upper = std::numeric_limits<double>::infinity();
  b.min_gamma = std::numeric_limits<double>::infinity();
  b.max_excess = -std::numeric_limits<double>::infinity();
  for (double s : s_grid) {
    const double g = metric_length(gamma(s), u, quad);
    b.min_gamma = std::min(b.min_gamma, g);
    double worst = -std::numeric_limits<double>::infinity();
    for (double alpha : alpha_grid) {
      const double len = metric_length(sweep_cycle(s, alpha).cycle, u, quad);
      worst = std::max(worst, len);
      b.max_excess = std::max(b.max_excess, len - g);
    }
    if (worst < b.upper) {
      b.upper = worst;
      b.s_star = s;
      b.gamma_at_s_star = g;
    }
  }
  b.chain_holds = b.max_excess <= tol && b.upper <= b.min_gamma + tol;
  return b;
}

TheoremResult theorem_check(const ConformalFactorField& u, const VerifySettings& settings) {
  require_resolution(settings.resolution);
  TheoremResult r;
  r.certificate = neighborhood_certificate(u, settings.resolution, settings.safety);
  r.bound = diastole_upper_bound(u, default_s_grid(settings.s_points),
                                 default_alpha_grid(settings.alpha_points), settings.quad,
                                 settings.tol);
  r.area = sphere_area(u, settings.resolution);
  r.variance = field_moments(u, settings.resolution).variance;

  const double U = r.bound.upper;
  r.report = make_report("diastolic_area", U * U, 2.0 * kSqrt3 * r.area, settings.tol);
  r.report.equality = r.report.margin < kEqualityRelative * r.area;
  const bool equality_consistent = r.report.equality == (r.variance < kVarianceThreshold);
  if (!r.certificate.valid) {
    r.report.verdict = Verdict::kOutsideRegime;
    r.report.note = "neighbourhood certificate invalid";
  } else if (!r.bound.chain_holds) {
    r.report.note = "sweep maximum exceeds the geodesic length";
  }
  if (!equality_consistent) {
    r.report.note += r.report.note.empty() ? "" : "; ";
    r.report.note += "equality flag disagrees with the variance test";
  }
  r.report.values = {{"area", r.area},
                     {"diastole_upper_bound", U},
                     {"s_star", r.bound.s_star},
                     {"gamma_at_s_star", r.bound.gamma_at_s_star},
                     {"min_gamma", r.bound.min_gamma},
                     {"max_excess", r.bound.max_excess},
                     {"chain_holds", r.bound.chain_holds ? 1.0 : 0.0},
                     {"diastolic_area_ratio", r.area / (U * U)},
                     {"variance", r.variance},
                     {"equality_consistent", equality_consistent ? 1.0 : 0.0},
                     {"certificate_margin", r.certificate.margin},
                     {"sup_deviation", r.certificate.sup_dev},
                     {"sup_slope", r.certificate.sup_slope}};
  r.report.settings = settings_echo(settings);
  return r;
}

}  // namespace dias
