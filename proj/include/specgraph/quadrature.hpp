#pragma once

#include <vector>

namespace specgraph {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [-1, 1], nodes ascending.
QuadratureRule gauss_legendre(int n);

/// Clenshaw–Curtis rule on the n+1 Chebyshev extreme points x_j = cos(jπ/n).
QuadratureRule clenshaw_curtis(int n);

} // namespace specgraph
