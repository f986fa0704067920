#include "dias/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dias/constants.hpp"
#include "dias/errors.hpp"

namespace dias {

namespace {

void require_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) {
    throw OutOfRange("alpha must lie in [0, 1]");
  }
}

double check_height(double s) {
  if (!std::isfinite(s) || s < -1e-15 || s > kHexHeight + 1e-15) {
    throw OutOfRange("s must lie in [0, sqrt3/2]");
  }
  return std::clamp(s, 0.0, kHexHeight);
}

PlanePoint row_center(int j) {
  const int parity = ((j % 2) + 2) % 2;
  return {0.5 * parity, j * kRowSpacing};
}

LiftComponent point_component(const PlanePoint& c) { return {{c, c}, c}; }

// Equilateral triangle about `c` having [p, q] as a side, scaled by `ratio`.
LiftComponent triangle_component(const std::array<PlanePoint, 2>& side, const PlanePoint& c,
                                 double ratio) {
  const PlanePoint third = 3.0 * c - side[0] - side[1];
  LiftComponent out;
  out.center = c;
  for (const PlanePoint& v : {side[0], side[1], third, side[0]}) {
    out.vertices.push_back(scale_about(v, c, ratio));
  }
  return out;
}

// Equiangular hexagon about `target` developed from the low side followed by
// the reversed high side; consecutive coincident vertices are merged, so
// a zero side leaves a triangle.
LiftComponent hexagon_component(const SweepFrame& f, double ratio) {
  const PlanePoint& t = f.target;
  const std::array<PlanePoint, 6> raw = {
      f.low_side[0],           f.low_side[1],
      rotate_third(f.low_side[0], t, 1), rotate_third(f.low_side[1], t, 1),
      rotate_third(f.low_side[0], t, 2), rotate_third(f.low_side[1], t, 2)};
  LiftComponent out;
  out.center = t;
  for (const PlanePoint& v : raw) {
    const PlanePoint w = scale_about(v, t, ratio);
    if (out.vertices.empty() || !(out.vertices.back() == w)) out.vertices.push_back(w);
  }
  if (out.vertices.size() > 1 && out.vertices.back() == out.vertices.front()) out.vertices.pop_back();
  out.vertices.push_back(out.vertices.front());
  return out;
}

double leg_integral(const PlanePoint& a, const PlanePoint& b, const ConformalFactorField& u,
                    const QuadratureRule& rule) {
  const double dx = b.x - a.x;
  if (dx == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * std::exp(u.value(a + rule.nodes[i] * (b - a)));
  }
  return dx * sum;
}

// Integral of d/dy e^u over the trapezoid, in the plane's standard orientation.
double domain_slope_integral(const TrapezoidDomain& d, const ConformalFactorField& u,
                             const QuadratureRule& rule) {
  const double y0 = d.outer_start.y;
  const double y1 = d.inner_start.y;
  const double dy = std::abs(y1 - y0);
  if (dy == 0.0) return 0.0;
  CompensatedSum total;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const double eta = rule.nodes[j];
    const double y = y0 + eta * (y1 - y0);
    const double xl = d.outer_start.x + eta * (d.inner_start.x - d.outer_start.x);
    const double xr = d.outer_end.x + eta * (d.inner_end.x - d.outer_end.x);
    const double width = xr - xl;
    if (width <= 0.0) continue;
    double row = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const FieldValue v = u.eval({xl + rule.nodes[i] * width, y});
      row += rule.weights[i] * std::exp(v.value) * v.gradient.y;
    }
    total.add(rule.weights[j] * row * width);
  }
  return total.value() * dy;
}

}  // namespace

double flat_length(const OneCycleLift& cycle) {
  double total = 0.0;
  for (const auto& c : cycle.components) {
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
      total += distance(c.vertices[i], c.vertices[i + 1]);
    }
  }
  return cycle.weight * total;
}

double segment_metric_length(const PlanePoint& a, const PlanePoint& b,
                             const ConformalFactorField& u, const QuadratureRule& rule) {
  const double len = distance(a, b);
  if (len == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * std::exp(u.value(a + rule.nodes[i] * (b - a)));
  }
  return len * sum;
}

double metric_length(const OneCycleLift& cycle, const ConformalFactorField& u,
                     const QuadratureParams& quad, bool all_edges) {
  const QuadratureRule rule = composite_gauss(quad.nodes, quad.panel_order);
  double total = 0.0;
  for (const auto& c : cycle.components) {
    const std::size_t edges = c.edge_count();
    const bool orbit = !all_edges && u.symmetrized() && c.center && edges % 3 == 0;
    const std::size_t count = orbit ? edges / 3 : edges;
    double part = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      part += segment_metric_length(c.vertices[i], c.vertices[i + 1], u, rule);
    }
    total += orbit ? 3.0 * part : part;
  }
  return cycle.weight * total;
}

namespace {

double directed_hausdorff(const OneCycleLift& a, const OneCycleLift& b, int samples) {
  double worst = 0.0;
  for (const auto& ca : a.components) {
    for (std::size_t i = 0; i + 1 < ca.vertices.size(); ++i) {
      const PlanePoint p = ca.vertices[i];
      const PlanePoint q = ca.vertices[i + 1];
      const int n = p == q ? 1 : samples;
      for (int k = 0; k < n; ++k) {
        const double t = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
        const PlanePoint x = p + t * (q - p);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& cb : b.components) {
          for (std::size_t j = 0; j + 1 < cb.vertices.size(); ++j) {
            best = std::min(best, sphere_distance_to_segment(x, cb.vertices[j], cb.vertices[j + 1]));
          }
        }
        worst = std::max(worst, best);
      }
    }
  }
  return worst;
}

}  // namespace

double sphere_hausdorff(const OneCycleLift& a, const OneCycleLift& b, int samples) {
  if (samples < 2) throw ResolutionError("sphere_hausdorff needs at least 2 samples per edge");
  return std::max(directed_hausdorff(a, b, samples), directed_hausdorff(b, a, samples));
}

OneCycleLift gamma(double s) {
  s = check_height(s);
  OneCycleLift out;
  out.components.push_back({{{0.0, s}, {1.0, s}}, std::nullopt});
  out.weight = 1.0;
  return out;
}

SweepFrame sweep_frame(double s) {
  s = check_height(s);
  double t = s / kRowSpacing;
  const double nearest = std::round(t);
  const bool on_row = std::abs(t - nearest) < 1e-12;
  if (on_row) t = nearest;
  SweepFrame f;
  f.k = std::min(static_cast<int>(std::floor(t)), 2);
  double a_low = t - f.k;
  bool snapped = on_row;
  if (a_low < kSideEpsilon) {
    a_low = 0.0;
    snapped = true;
  } else if (1.0 - a_low < kSideEpsilon) {
    a_low = 1.0;
    snapped = true;
  }
  f.s = snapped ? (f.k + a_low) * kRowSpacing : s;
  // Lifts chosen next to the low side: c_high sits over the middle of the
  // high side, the targets straight above c_low and below c_high.
  f.c_low = row_center(f.k);
  const double x0 = f.c_low.x;
  f.c_high = {x0 + 0.5, (f.k + 1) * kRowSpacing};
  f.target = {x0, (f.k + 2) * kRowSpacing};
  f.target_below = {x0 + 0.5, (f.k - 1) * kRowSpacing};
  // Chord half-width of the triangle about c_low: sqrt3 * (height above c_low).
  const double half = a_low == 0.0 ? 0.0 : (a_low == 1.0 ? 0.5 : kSqrt3 * (f.s - f.c_low.y));
  f.a_low = 2.0 * half;
  f.a_high = 1.0 - f.a_low;
  f.low_side = {PlanePoint{x0 - half, f.s}, PlanePoint{x0 + half, f.s}};
  f.high_side = {PlanePoint{x0 + half, f.s}, PlanePoint{x0 + 1.0 - half, f.s}};
  f.special = f.a_low == 0.0 || f.a_high == 0.0;
  return f;
}

SplitLengths split_lengths(double s) {
  const SweepFrame f = sweep_frame(s);
  if (f.special) throw SpecialHeight("gamma_s passes through a cone point; use the First case");
  return {f.k, f.a_low, f.a_high, {f.k % 3, (f.k + 1) % 3}, (f.k + 2) % 3};
}

SweepCycle sweep_cycle(double s, double alpha) {
  require_alpha(alpha);
  const SweepFrame f = sweep_frame(s);
  SweepCycle out;
  out.s = s;
  out.alpha = alpha;
  out.sweep_case = f.special ? SweepCase::kFirst : SweepCase::kSecond;
  out.k = f.k;
  out.a_low = f.a_low;
  out.a_high = f.a_high;
  out.cycle.weight = 1.0 / 3.0;
  if (alpha <= 0.5) {
    const double ratio = 2.0 * alpha;
    out.cycle.components.push_back(f.a_low == 0.0 ? point_component(f.c_low)
                                                  : triangle_component(f.low_side, f.c_low, ratio));
    out.cycle.components.push_back(f.a_high == 0.0
                                       ? point_component(f.c_high)
                                       : triangle_component(f.high_side, f.c_high, ratio));
  } else {
    out.cycle.components.push_back(hexagon_component(f, 2.0 - 2.0 * alpha));
  }
  return out;
}

double TrapezoidDomain::area() const {
  return 0.5 * (outer_length() + inner_length()) * height();
}

double TrapezoidDomain::triangle_formula_area() const {
  const double big = outer_length();
  const double small = inner_length();
  return 0.25 * kTanPiOver6 * (big * big - small * small);
}

std::array<PlanePoint, 4> TrapezoidDomain::polygon() const {
  if (orientation > 0) return {inner_start, inner_end, outer_end, outer_start};
  return {outer_start, outer_end, inner_end, inner_start};
}

std::vector<TrapezoidDomain> trapezoid_domains(double s, double alpha) {
  require_alpha(alpha);
  const SweepFrame f = sweep_frame(s);
  const bool shrink = alpha <= 0.5;
  const double ratio = shrink ? 2.0 * alpha : 2.0 - 2.0 * alpha;
  const std::array<PlanePoint, 2> centers =
      shrink ? std::array{f.c_low, f.c_high} : std::array{f.target, f.target_below};
  std::vector<TrapezoidDomain> out;
  for (int i = 0; i < 2; ++i) {
    const auto& side = i == 0 ? f.low_side : f.high_side;
    const double len = i == 0 ? f.a_low : f.a_high;
    TrapezoidDomain d;
    d.component = i;
    d.center = centers[i];
    d.ratio = ratio;
    if (len == 0.0) {
      // Reduced to a point: the side collapses onto the cone point it meets.
      d.outer_start = d.outer_end = d.inner_start = d.inner_end = side[0];
    } else {
      d.outer_start = side[0];
      d.outer_end = side[1];
      d.inner_start = scale_about(side[0], d.center, ratio);
      d.inner_end = scale_about(side[1], d.center, ratio);
    }
    d.orientation = d.center.y < f.s ? 1 : -1;
    out.push_back(d);
  }
  return out;
}

std::vector<StokesTerms> stokes_residual(const ConformalFactorField& u, double s, double alpha,
                                         const QuadratureParams& quad) {
  const QuadratureRule arc = composite_gauss(quad.nodes, quad.panel_order);
  const QuadratureRule area = composite_gauss(quad.nodes_2d, quad.panel_order);
  std::vector<StokesTerms> out;
  for (const TrapezoidDomain& d : trapezoid_domains(s, alpha)) {
    StokesTerms t;
    t.component = d.component;
    t.outer = segment_metric_length(d.outer_start, d.outer_end, u, arc);
    t.inner = segment_metric_length(d.inner_start, d.inner_end, u, arc);
    // Legs run outer_start -> inner_start and inner_end -> outer_end, so that
    // leg, inner arc, leg is an arc homotopic to the outer arc.
    t.legs = leg_integral(d.outer_start, d.inner_start, u, arc) +
             leg_integral(d.inner_end, d.outer_end, u, arc);
    t.area_term = d.orientation * domain_slope_integral(d, u, area);
    t.residual = std::abs(t.outer - t.inner - t.legs - t.area_term);
    out.push_back(t);
  }
  return out;
}

InequalityReport stokes_lower_bound_check(const ConformalFactorField& u, double s, double alpha,
                                          const SupEstimates& sups, const QuadratureParams& quad,
                                          double tol) {
  require_alpha(alpha);
  const double factor = 1.0 - sups.deviation - kRowSpacing * sups.slope;
  const QuadratureRule arc = composite_gauss(quad.nodes, quad.panel_order);
  double worst_margin = std::numeric_limits<double>::infinity();
  double lhs = 0.0;
  double rhs = 0.0;
  double area_ratio = 0.0;
  std::vector<std::pair<std::string, double>> values;
  for (const TrapezoidDomain& d : trapezoid_domains(s, alpha)) {
    const double flat = d.outer_length() - d.inner_length();
    const double metric = segment_metric_length(d.outer_start, d.outer_end, u, arc) -
                          segment_metric_length(d.inner_start, d.inner_end, u, arc);
    const double l = factor * flat;
    const std::string tag = "component" + std::to_string(d.component);
    values.push_back({tag + "_flat_difference", flat});
    values.push_back({tag + "_metric_difference", metric});
    if (flat > 0.0) area_ratio = std::max(area_ratio, d.area() / flat);
    if (metric - l < worst_margin) {
      worst_margin = metric - l;
      lhs = l;
      rhs = metric;
    }
  }
  InequalityReport r = make_report("stokes_lower_bound", lhs, rhs, tol);
  if (factor <= 0.0) r.verdict = Verdict::kOutsideRegime;
  r.values = {{"factor", factor},
              {"sup_deviation", sups.deviation},
              {"sup_slope", sups.slope},
              // Same bound with the actual domain area in place of (1/(2 sqrt3)) * flat.
              {"area_factor", 1.0 - sups.deviation - area_ratio * sups.slope},
              {"max_area_per_length", area_ratio}};
  r.values.insert(r.values.end(), values.begin(), values.end());
  r.settings = {{"s", s},
                {"alpha", alpha},
                {"nodes", static_cast<double>(quad.nodes)},
                {"panel_order", static_cast<double>(quad.panel_order)}};
  return r;
}

InequalityReport stokes_lower_bound_check(const ConformalFactorField& u, double s, double alpha,
                                          int n, const QuadratureParams& quad, double tol) {
  const SupEstimates sups{sup_deviation(u, n), sup_slope(u, n)};
  InequalityReport r = stokes_lower_bound_check(u, s, alpha, sups, quad, tol);
  r.settings.push_back({"resolution", static_cast<double>(n)});
  return r;
}

}  // namespace dias
