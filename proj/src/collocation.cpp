#include "specgraph/collocation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace specgraph {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  if (n == 1) p0 = 1.0;
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

} // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  QuadratureRule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

QuadratureRule clenshaw_curtis(int n) {
  if (n < 1) throw std::invalid_argument("clenshaw_curtis: n >= 1 required");
  QuadratureRule r;
  VectorXd x = chebyshev_points(n);
  r.nodes.assign(x.data(), x.data() + x.size());
  r.weights.assign(n + 1, 0.0);
  const double pi = std::numbers::pi;
  if (n % 2 == 0) {
    r.weights[0] = r.weights[n] = 1.0 / (double(n) * n - 1.0);
  } else {
    r.weights[0] = r.weights[n] = 1.0 / (double(n) * n);
  }
  for (int j = 1; j < n; ++j) {
    const double theta = pi * j / n;
    double v = 1.0;
    if (n % 2 == 0) {
      for (int k = 1; k < n / 2; ++k) v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
      v -= std::cos(n * theta) / (double(n) * n - 1.0);
    } else {
      for (int k = 1; k <= (n - 1) / 2; ++k) v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    }
    r.weights[j] = 2.0 * v / n;
  }
  return r;
}

VectorXd chebyshev_points(int n) {
  VectorXd x(n + 1);
  for (int j = 0; j <= n; ++j) x(j) = std::sin(std::numbers::pi * (n - 2.0 * j) / (2.0 * n));
  return x;
}

MatrixXd chebyshev_differences(int n, int first, int last) {
  const int m = last - first + 1;
  MatrixXd dx(m, m);
  const double h = std::numbers::pi / (2.0 * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int a = first + i, b = first + j;
      // cos(aθ) - cos(bθ) = 2 sin((a+b)θ/2) sin((b-a)θ/2), θ = π/n
      dx(i, j) = 2.0 * std::sin((a + b) * h) * std::sin((b - a) * h);
    }
  return dx;
}

VectorXd chebyshev_weights(int n) {
  VectorXd w(n + 1);
  for (int j = 0; j <= n; ++j) w(j) = (j % 2 ? -1.0 : 1.0);
  w(0) *= 0.5;
  w(n) *= 0.5;
  return w;
}

VectorXd chebyshev_interior_weights(int n) {
  VectorXd w(n - 1);
  const VectorXd x = chebyshev_points(n);
  for (int j = 1; j < n; ++j) {
    // 1 - x^2 = sin^2(jπ/n), computed without cancellation
    const double s = std::sin(std::numbers::pi * j / n);
    w(j - 1) = (j % 2 ? -1.0 : 1.0) * s * s;
  }
  return w;
}

std::vector<MatrixXd> differentiation_matrices(const MatrixXd& dx, const VectorXd& w, int order) {
  const Eigen::Index m = dx.rows();
  std::vector<MatrixXd> out;
  out.reserve(order);
  MatrixXd prev = MatrixXd::Identity(m, m);
  for (int k = 1; k <= order; ++k) {
    MatrixXd d(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      double sum = 0.0;
      for (Eigen::Index j = 0; j < m; ++j) {
        if (i == j) continue;
        const double v = k / dx(i, j) * (w(j) / w(i) * prev(i, i) - prev(i, j));
        d(i, j) = v;
        sum += v;
      }
      d(i, i) = -sum;
    }
    out.push_back(d);
    prev = std::move(d);
  }
  return out;
}

MatrixXd interpolation_matrix(const VectorXd& nodes, const VectorXd& w, const VectorXd& t) {
  MatrixXd e = MatrixXd::Zero(t.size(), nodes.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    Eigen::Index hit = -1;
    for (Eigen::Index j = 0; j < nodes.size(); ++j)
      if (t(i) == nodes(j)) hit = j;
    if (hit >= 0) {
      e(i, hit) = 1.0;
      continue;
    }
    double s = 0.0;
    for (Eigen::Index j = 0; j < nodes.size(); ++j) {
      e(i, j) = w(j) / (t(i) - nodes(j));
      s += e(i, j);
    }
    e.row(i) /= s;
  }
  return e;
}

CollocationGrid CollocationGrid::chebyshev(int n) {
  if (n < 16) throw std::invalid_argument("collocation grid needs n >= 16");
  CollocationGrid g;
  g.n = n;
  g.nodes = chebyshev_points(n);
  auto d = differentiation_matrices(chebyshev_differences(n, 0, n), chebyshev_weights(n), 2);
  g.diff1 = std::move(d[0]);
  g.diff2 = std::move(d[1]);
  QuadratureRule cc = clenshaw_curtis(n);
  g.weights = Eigen::Map<const VectorXd>(cc.weights.data(), n + 1);
  return g;
}

} // namespace specgraph
