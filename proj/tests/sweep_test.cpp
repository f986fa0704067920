#include "dias/sweep.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "dias/constants.hpp"
#include "dias/errors.hpp"
#include "oracles.hpp"

namespace dias {
namespace {

double grid_s(int i) { return (i + 0.5) * kHexHeight / 64.0; }

ConformalFactorField small_field(std::uint64_t seed, double amplitude) {
  return random_field(seed, amplitude);
}

double edge_max(const OneCycleLift& c) {
  double worst = 0.0;
  for (const auto& comp : c.components) {
    for (std::size_t i = 0; i + 1 < comp.vertices.size(); ++i) {
      worst = std::max(worst, distance(comp.vertices[i], comp.vertices[i + 1]));
    }
  }
  return worst;
}

TEST(Gamma, UnitHorizontalSegment) {
  const OneCycleLift g = gamma(0.0);
  ASSERT_EQ(g.components.size(), 1u);
  EXPECT_EQ(g.components[0].vertices[0], (PlanePoint{0.0, 0.0}));
  EXPECT_EQ(g.components[0].vertices[1], (PlanePoint{1.0, 0.0}));
  for (double s : {0.0, 0.1, 0.5, kHexHeight}) EXPECT_DOUBLE_EQ(flat_length(gamma(s)), 1.0);
  const auto u = ConformalFactorField::constant(std::log(2.0));
  EXPECT_NEAR(metric_length(gamma(0.1), u), 2.0, 1e-13);
  EXPECT_THROW(gamma(-0.01), OutOfRange);
  EXPECT_THROW(gamma(0.9), OutOfRange);
}

TEST(SplitLengths, MatchesChordOracle) {
  const SplitLengths mid = split_lengths(1.0 / (4.0 * kSqrt3));
  EXPECT_NEAR(mid.a_low, 0.5, 1e-12);
  EXPECT_NEAR(mid.a_high, 0.5, 1e-12);

  const SplitLengths a = split_lengths(0.1);
  EXPECT_EQ(a.k, 0);
  EXPECT_NEAR(a.a_low, oracle::chord_length({0.0, 0.0}, 0.1), 1e-12);
  EXPECT_NEAR(a.a_high, oracle::chord_length({0.5, kRowSpacing}, 0.1), 1e-12);
  EXPECT_NEAR(a.a_low, 0.34641016151377546, 1e-12);
  EXPECT_EQ(a.encircled[0], 0);
  EXPECT_EQ(a.encircled[1], 1);
  EXPECT_EQ(a.contraction_target, 2);

  const SplitLengths b = split_lengths(0.4);
  EXPECT_EQ(b.k, 1);
  EXPECT_NEAR(b.a_low, oracle::chord_length({0.5, kRowSpacing}, 0.4), 1e-12);
  EXPECT_NEAR(b.a_low, 2.0 * kSqrt3 * 0.4 - 1.0, 1e-12);
  EXPECT_EQ(b.contraction_target, 0);
}

TEST(SplitLengths, SpecialHeightsThrow) {
  for (int j = 0; j <= 3; ++j) EXPECT_THROW(split_lengths(j * kRowSpacing), SpecialHeight);
  EXPECT_THROW(split_lengths(kRowSpacing + 1e-13), SpecialHeight);
}

TEST(SweepFrame, SidesLieOnTrianglesAboutRowCentres) {
  for (int i = 0; i < 64; ++i) {
    const SweepFrame f = sweep_frame(grid_s(i));
    ASSERT_NEAR(f.a_low + f.a_high, 1.0, 1e-15);
    // Each side is a chord of the triangle about its centre: a third turn
    // carries the right endpoint onto the left one (clockwise below the centre).
    ASSERT_LT(distance(rotate_third(f.low_side[1], f.c_low, 1), f.low_side[0]), 1e-12);
    ASSERT_LT(distance(rotate_third(f.high_side[1], f.c_high, 2), f.high_side[0]), 1e-12);
    ASSERT_NEAR(distance(rotate_third(f.low_side[0], f.c_low, 1), f.low_side[0]), f.a_low, 1e-12);
  }
}

TEST(SweepFrame, TopEdgeUsesLastInterval) {
  const SweepFrame f = sweep_frame(kHexHeight);
  EXPECT_EQ(f.k, 2);
  EXPECT_EQ(f.a_low, 1.0);
  EXPECT_EQ(f.a_high, 0.0);
  EXPECT_TRUE(f.special);
}

TEST(SweepCycle, LengthLawOnGrid) {
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j <= 128; ++j) {
      const double alpha = j / 128.0;
      const SweepCycle z = sweep_cycle(grid_s(i), alpha);
      worst = std::max(worst, std::abs(flat_length(z.cycle) - (1.0 - 2.0 * std::abs(alpha - 0.5))));
    }
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(SweepCycle, LengthLawAtSpecialHeights) {
  for (int j = 0; j <= 3; ++j) {
    for (double alpha : {0.0, 0.1, 0.5, 0.8, 1.0}) {
      const SweepCycle z = sweep_cycle(j * kRowSpacing, alpha);
      EXPECT_EQ(z.sweep_case, SweepCase::kFirst);
      EXPECT_NEAR(flat_length(z.cycle), 1.0 - 2.0 * std::abs(alpha - 0.5), 1e-12);
    }
  }
}

TEST(SweepCycle, EndpointsArePoints) {
  for (int i = 0; i < 64; i += 7) {
    EXPECT_LT(edge_max(sweep_cycle(grid_s(i), 0.0).cycle), 1e-9);
    EXPECT_LT(edge_max(sweep_cycle(grid_s(i), 1.0).cycle), 1e-9);
  }
  EXPECT_LT(edge_max(sweep_cycle(0.0, 0.0).cycle), 1e-9);
  EXPECT_LT(edge_max(sweep_cycle(0.0, 1.0).cycle), 1e-9);
}

TEST(SweepCycle, HalfCoincidesWithGamma) {
  for (int i = 0; i < 64; i += 5) {
    const double s = grid_s(i);
    EXPECT_LT(sphere_hausdorff(sweep_cycle(s, 0.5).cycle, gamma(s), 24), 1e-9) << s;
  }
  EXPECT_LT(sphere_hausdorff(sweep_cycle(0.0, 0.5).cycle, gamma(0.0), 24), 1e-9);
}

TEST(SweepCycle, BaseTriangleAtZero) {
  const SweepCycle z = sweep_cycle(0.0, 0.5);
  ASSERT_EQ(z.cycle.components.size(), 2u);
  const auto& tri = z.cycle.components[1].vertices;
  ASSERT_EQ(tri.size(), 4u);
  EXPECT_NEAR(distance(tri[2], {0.5, kHexHeight}), 0.0, 1e-15);
  EXPECT_NEAR(oracle::shoelace_area({tri[0], tri[1], tri[2]}), kHexHeight / 2.0, 1e-15);
  EXPECT_NEAR(flat_length(z.cycle), 1.0, 1e-15);
  EXPECT_EQ(z.cycle.components[0].edge_count(), 1u);
  EXPECT_EQ(edge_max(OneCycleLift{{z.cycle.components[0]}, 1.0}), 0.0);
}

TEST(SweepCycle, ContinuityInAlpha) {
  const double step = 1.0 / 32.0;
  for (double s : {0.05, 0.1, 0.3, 0.6, 0.85}) {
    for (int j = 0; j < 32; ++j) {
      const double h = sphere_hausdorff(sweep_cycle(s, j * step).cycle,
                                        sweep_cycle(s, (j + 1) * step).cycle, 8);
      ASSERT_LE(h, 3.0 * step) << s << " " << j;
    }
  }
}

TEST(SweepCycle, HexagonAgreesWithDevelopment) {
  for (int i = 0; i < 64; ++i) {
    // just past 1/2: the unscaled hexagon, up to one rounding
    const SweepCycle full = sweep_cycle(grid_s(i), std::nextafter(0.5, 1.0));
    ASSERT_EQ(full.cycle.components.size(), 1u);
    const auto& hex = full.cycle.components[0].vertices;
    ASSERT_EQ(hex.size(), 7u);
    const auto dev = oracle::develop_hexagon(hex[0], full.a_low, full.a_high);
    for (std::size_t v = 0; v < 7; ++v) ASSERT_LT(distance(hex[v], dev[v]), 1e-12) << v;
    // closure of the independent walk
    ASSERT_LT(distance(dev[6], dev[0]), 1e-9);
    double perimeter = 0.0;
    int sign = 0;
    for (std::size_t v = 0; v < 6; ++v) {
      perimeter += distance(hex[v], hex[v + 1]);
      const double c = cross(hex[v + 1] - hex[v], hex[(v + 2) % 6] - hex[v + 1]);
      const int sg = c > 0 ? 1 : -1;
      if (v == 0) sign = sg;
      ASSERT_EQ(sg, sign);
      ASSERT_GT(cross(hex[v + 1] - hex[v], *full.cycle.components[0].center - hex[v]), 0.0);
    }
    ASSERT_NEAR(perimeter, 3.0, 1e-9);
  }
}

TEST(SweepCycle, HexagonExampleScaled) {
  const SweepCycle z = sweep_cycle(0.1, 0.75);
  ASSERT_EQ(z.cycle.components.size(), 1u);
  const auto& c = z.cycle.components[0];
  EXPECT_NEAR(c.center->x, 0.0, 1e-15);
  EXPECT_NEAR(c.center->y, 2.0 * kRowSpacing, 1e-15);
  EXPECT_NEAR(flat_length(z.cycle) * 3.0, 1.5, 1e-12);
  EXPECT_NEAR(flat_length(z.cycle), 0.5, 1e-12);
}

TEST(SweepCycle, HexagonBecomesTriangleAtSpecialHeight) {
  const SweepCycle z = sweep_cycle(kRowSpacing, 0.9);
  ASSERT_EQ(z.cycle.components.size(), 1u);
  EXPECT_EQ(z.cycle.components[0].edge_count(), 3u);
}

TEST(SweepCycle, RejectsBadParameters) {
  EXPECT_THROW(sweep_cycle(0.1, -0.1), OutOfRange);
  EXPECT_THROW(sweep_cycle(0.1, 1.1), OutOfRange);
  EXPECT_THROW(sweep_cycle(0.1, std::nan("")), OutOfRange);
  EXPECT_THROW(sweep_cycle(1.0, 0.5), OutOfRange);
}

TEST(SweepCycle, DeckInvariantComponents) {
  for (double s : {0.1, 0.45, 0.7}) {
    for (double alpha : {0.2, 0.5, 0.7}) {
      const SweepCycle z = sweep_cycle(s, alpha);
      for (const auto& comp : z.cycle.components) {
        ASSERT_TRUE(comp.center.has_value());
        LiftComponent turned = comp;
        for (auto& v : turned.vertices) v = rotate_third(v, *comp.center, 1);
        ASSERT_LT(sphere_hausdorff({{comp}, 1.0}, {{turned}, 1.0}, 8), 1e-9);
      }
    }
  }
}

TEST(MetricLength, OrbitShortcutMatchesAllEdges) {
  const auto u = small_field(11, 0.2);
  for (double alpha : {0.2, 0.8}) {
    const SweepCycle z = sweep_cycle(0.3, alpha);
    EXPECT_NEAR(metric_length(z.cycle, u), metric_length(z.cycle, u, {}, true), 1e-12);
  }
}

TEST(MetricLength, HalfAgreesWithGamma) {
  const auto u = small_field(5, 0.3);
  for (double s : {0.0, 0.1, 0.5}) {
    EXPECT_NEAR(metric_length(sweep_cycle(s, 0.5).cycle, u), metric_length(gamma(s), u), 1e-12);
  }
}

TEST(Trapezoid, AreasAgainstShoelace) {
  for (int i = 0; i < 64; i += 3) {
    for (double alpha : {0.0, 0.1, 0.25, 0.4, 0.6, 0.75, 1.0}) {
      for (const auto& d : trapezoid_domains(grid_s(i), alpha)) {
        const auto p = d.polygon();
        const double shoelace = oracle::shoelace_area({p.begin(), p.end()});
        ASSERT_NEAR(d.area(), shoelace, 1e-12);
        if (alpha <= 0.5) ASSERT_NEAR(d.triangle_formula_area(), shoelace, 1e-12);
      }
    }
  }
}

TEST(Trapezoid, CornerExamples) {
  const auto d = trapezoid_domains(0.0, 0.0);
  EXPECT_NEAR(d[0].area(), 0.0, 1e-15);
  EXPECT_NEAR(d[1].area(), 1.0 / (4.0 * kSqrt3), 1e-15);
  for (const auto& e : trapezoid_domains(0.1, 0.5)) EXPECT_NEAR(e.area(), 0.0, 1e-15);
  const auto q = trapezoid_domains(0.1, 0.25);
  for (const auto& e : q) {
    const double a = e.outer_length();
    EXPECT_NEAR(e.area(), 0.25 / kSqrt3 * (a * a - 0.25 * a * a), 1e-12);
  }
}

TEST(Trapezoid, AreaBoundedByHalfTanTimesDifference) {
  for (int i = 0; i < 64; i += 4) {
    for (double alpha : {0.0, 0.2, 0.45}) {
      for (const auto& d : trapezoid_domains(grid_s(i), alpha)) {
        ASSERT_LE(d.area(), 0.5 * kTanPiOver6 * (d.outer_length() - d.inner_length()) + 1e-15);
      }
    }
  }
}

TEST(Trapezoid, OrientationMatchesCentreSide) {
  for (const auto& d : trapezoid_domains(0.1, 0.25)) EXPECT_EQ(d.orientation, d.component == 0 ? 1 : -1);
  for (const auto& d : trapezoid_domains(0.1, 0.75)) EXPECT_EQ(d.orientation, d.component == 0 ? -1 : 1);
}

TEST(Stokes, ZeroAndConstantFields) {
  for (const auto& u : {ConformalFactorField::constant(0.0), ConformalFactorField::constant(0.7)}) {
    for (double s : {0.05, 0.3, 0.7}) {
      for (double alpha : {0.0, 0.3, 0.8, 1.0}) {
        for (const auto& t : stokes_residual(u, s, alpha)) ASSERT_LT(t.residual, 1e-12);
      }
    }
  }
  // zero field: the length drop is the horizontal leg displacement
  for (const auto& t : stokes_residual(ConformalFactorField::constant(0.0), 0.1, 0.3)) {
    EXPECT_NEAR(t.outer - t.inner, t.legs, 1e-14);
    EXPECT_EQ(t.area_term, 0.0);
  }
}

TEST(Stokes, RandomFieldResidual) {
  const auto u = small_field(2024, 0.2);
  const QuadratureParams fine{512, 8, 512};
  for (double alpha : {0.3, 0.8}) {
    for (const auto& t : stokes_residual(u, 0.13, alpha, fine)) EXPECT_LT(t.residual, 1e-6);
  }
}

TEST(Stokes, ConvergesUnderRefinement) {
  // Low-order panels so the error is above round-off at both resolutions.
  const auto u = small_field(77, 0.3);
  const QuadratureParams coarse{16, 2, 16};
  const QuadratureParams fine{32, 2, 32};
  const auto a = stokes_residual(u, 0.21, 0.3, coarse);
  const auto b = stokes_residual(u, 0.21, 0.3, fine);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_GT(a[i].residual, 1e-12);
    EXPECT_GE(a[i].residual / b[i].residual, 4.0) << i;
  }
}

TEST(StokesLowerBound, ZeroFieldIsTight) {
  const auto r = stokes_lower_bound_check(ConformalFactorField::constant(0.0), 0.1, 0.3, 64);
  EXPECT_EQ(r.verdict, Verdict::kHolds);
  EXPECT_NEAR(r.margin, 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(r.value("factor"), 1.0);
}

TEST(StokesLowerBound, SmallFieldHolds) {
  const auto u = small_field(9, 0.03);
  for (double s : {0.1, 0.4, 0.75}) {
    for (double alpha : {0.0, 0.2, 0.45}) {
      const auto r = stokes_lower_bound_check(u, s, alpha, 64);
      EXPECT_GT(r.value("factor"), 0.0);
      EXPECT_EQ(r.verdict, Verdict::kHolds) << s << " " << alpha;
    }
  }
}

TEST(StokesLowerBound, LargeFieldIsOutsideRegime) {
  const auto u = small_field(3, 2.0);
  const auto r = stokes_lower_bound_check(u, 0.1, 0.3, 64);
  EXPECT_LE(r.value("factor"), 0.0);
  EXPECT_EQ(r.verdict, Verdict::kOutsideRegime);
}

}  // namespace
}  // namespace dias
