#pragma once

#include "specgraph/quadrature.hpp"

#include <Eigen/Dense>
#include <vector>

namespace specgraph {

/// Extreme points x_j = cos(jπ/n), j = 0..n, evaluated as sin(π(n-2j)/(2n))
/// so the grid is exactly symmetric; descending order.
Eigen::VectorXd chebyshev_points(int n);

/// Matrix of x_i - x_j for the points with indices [first, last] of the n-grid,
/// from the product-of-sines identity (no cancellation near the ends).
Eigen::MatrixXd chebyshev_differences(int n, int first, int last);

/// Barycentric weights of the full extreme-point grid: (-1)^j, halved at the ends.
Eigen::VectorXd chebyshev_weights(int n);

/// Barycentric weights of the interior points j = 1..n-1: (-1)^j (1 - x_j^2).
Eigen::VectorXd chebyshev_interior_weights(int n);

/// Differentiation matrices of orders 1..order for the interpolant through
/// nodes with differences dx(i,j) = x_i - x_j and barycentric weights w
/// (Welfert's recursion, diagonal from the negative row sum). Element k-1 is D^(k).
std::vector<Eigen::MatrixXd> differentiation_matrices(const Eigen::MatrixXd& dx,
                                                      const Eigen::VectorXd& w, int order);

/// Rows evaluate the barycentric interpolant through (nodes, w) at the points t.
Eigen::MatrixXd interpolation_matrix(const Eigen::VectorXd& nodes, const Eigen::VectorXd& w,
                                     const Eigen::VectorXd& t);

struct CollocationGrid {
  int n = 0;
  Eigen::VectorXd nodes;   // n+1 extreme points, descending
  Eigen::MatrixXd diff1;
  Eigen::MatrixXd diff2;
  Eigen::VectorXd weights; // Clenshaw–Curtis, sum 2

  static CollocationGrid chebyshev(int n); // n >= 16
};

} // namespace specgraph
