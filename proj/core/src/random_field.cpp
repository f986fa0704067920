#include <cmath>
#include <random>

#include "dias/constants.hpp"
#include "dias/cover.hpp"
#include "dias/errors.hpp"

namespace dias {

ConformalFactorField random_field(std::uint64_t seed, double target_sup,
                                  const RandomFieldOptions& options) {
  if (!std::isfinite(target_sup) || target_sup < 0.0) {
    throw InvalidInput("random field sup norm must be finite and non-negative");
  }
  if (options.max_index < 1 || options.term_count < 1) {
    throw InvalidInput("random field needs at least one mode");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> index(-options.max_index, options.max_index);
  std::uniform_real_distribution<double> amplitude(0.2, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);

  std::vector<FourierTerm> terms;
  terms.reserve(options.term_count);
  while (static_cast<int>(terms.size()) < options.term_count) {
    const int m = index(rng);
    const int n = index(rng);
    if (m == 0 && n == 0) continue;
    const double a = amplitude(rng);
    terms.push_back({m, n, a, phase(rng)});
  }
  const ConformalFactorField shape = symmetrize(ConformalFactorField::fourier_sum(std::move(terms)));

  double sup = 0.0;
  const int n = options.sup_grid;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      sup = std::max(sup, std::abs(shape.value({static_cast<double>(i) / n, kHexHeight * j / n})));
    }
  }
  if (sup == 0.0) return shape;
  return shape.scaled(target_sup / sup);
}

}  // namespace dias
