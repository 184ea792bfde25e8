#pragma once

#include <vector>

namespace liedg {

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule on [0, 1], exact for polynomials of degree
/// <= 2n - 1. Valid for 1 <= n <= 32; throws InvalidSpec otherwise.
QuadratureRule gauss_legendre_nodes(int n);

/// Cached rule; the returned reference stays valid for the program lifetime.
const QuadratureRule& gauss_legendre_cached(int n);

}  // namespace liedg
