#include "dias/quadrature.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "dias/constants.hpp"
#include "dias/errors.hpp"

namespace dias {

namespace {

// Returns (P_n(x), P_{n-1}(x)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [pn, pm] = legendre(n, x);
      const double dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [pn, pm] = legendre(n, x);
    const double dp = n * (x * pn - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map from [-1,1] to [0,1] with ascending nodes.
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw ResolutionError("Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

QuadratureRule composite_gauss(int nodes, int panel_order) {
  if (nodes < 1 || panel_order < 1) throw ResolutionError("quadrature node counts must be positive");
  const int order = panel_order > nodes ? nodes : panel_order;
  const int panels = (nodes + order - 1) / order;
  const QuadratureRule& base = gauss_legendre(order);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * order);
  rule.weights.reserve(rule.nodes.capacity());
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back((p + base.nodes[i]) * h);
      rule.weights.push_back(base.weights[i] * h);
    }
  }
  return rule;
}

double deterministic_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 64;
  if (values.size() <= kBlock) {
    CompensatedSum acc;
    for (double v : values) acc.add(v);
    return acc.value();
  }
  const std::size_t half = values.size() / 2;
  return deterministic_sum(values.first(half)) + deterministic_sum(values.subspan(half));
}

}  // namespace dias
