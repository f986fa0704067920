#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace dias {

// Nodes and weights of a quadrature rule on [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [0, 1] (exact for degree 2n-1). Rules are
// computed once per order and cached.
const QuadratureRule& gauss_legendre(int n);

// Composite Gauss-Legendre on [0, 1] with ceil(nodes / panel_order) equal
// panels of `panel_order` points each.
QuadratureRule composite_gauss(int nodes, int panel_order);

// Settings for line and domain quadrature in the sweep machinery.
struct QuadratureParams {
  int nodes = 64;        // per edge
  int panel_order = 8;   // Gauss points per panel
  int nodes_2d = 64;     // per direction for trapezoid domains
};

// Neumaier-compensated accumulator. Summation order is the call order, so
// results are reproducible whenever callers add terms in a fixed order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Pairwise reduction of compensated partial sums in index order.
double deterministic_sum(std::span<const double> values);

}  // namespace dias
