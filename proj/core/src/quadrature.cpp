#include "liedg/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "liedg/errors.hpp"

namespace liedg {

QuadratureRule gauss_legendre_nodes(int n) {
  if (n < 1 || n > 32) throw InvalidSpec("gauss_legendre_nodes: n must be in [1, 32], got " + std::to_string(n));
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton on P_n over [-1, 1], using the symmetry of the roots.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x > 0 here (roots taken from the right); map to [0, 1] ascending.
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

const QuadratureRule& gauss_legendre_cached(int n) {
  static std::array<QuadratureRule, 33> cache;
  static std::array<std::once_flag, 33> flags;
  if (n < 1 || n > 32) throw InvalidSpec("gauss_legendre_nodes: n must be in [1, 32], got " + std::to_string(n));
  std::call_once(flags[n], [n] { cache[n] = gauss_legendre_nodes(n); });
  return cache[n];
}

}  // namespace liedg
