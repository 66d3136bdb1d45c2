#include "specgraph/disc.hpp"

#include "specgraph/errors.hpp"
#include "specgraph/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace specgraph {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

const cplx I(0.0, 1.0);

// Deterministic order: Im descending (quantised so rounding noise on a
// real spectrum does not decide), then Re ascending.
std::vector<int> spectral_order(const VectorXcd& ev) {
  std::vector<int> idx(ev.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
    const double qi = std::round(ev(i).imag() / 1e-8), qj = std::round(ev(j).imag() / 1e-8);
    if (qi != qj) return qi > qj;
    return ev(i).real() < ev(j).real();
  });
  return idx;
}

void flag_near_defective(SpectrumResult& s, const MatrixXd& gram) {
  const int m = s.size();
  s.near_defective.assign(m, false);
  if (s.coefficients.size() == 0) return;
  std::vector<int> byre(m);
  std::iota(byre.begin(), byre.end(), 0);
  std::sort(byre.begin(), byre.end(),
            [&](int i, int j) { return s.eigenvalues(i).real() < s.eigenvalues(j).real(); });
  for (int a = 0; a < m; ++a) {
    const int i = byre[a];
    for (int b = a + 1; b < m; ++b) {
      const int j = byre[b];
      if (s.eigenvalues(j).real() - s.eigenvalues(i).real() > 1e-6) break;
      if (std::abs(s.eigenvalues(i) - s.eigenvalues(j)) > 1e-6) continue;
      const VectorXcd ci = s.coefficients.col(i), cj = s.coefficients.col(j);
      const cplx ip = (cj.adjoint() * gram.cast<cplx>() * ci)(0, 0);
      const cplx phase = std::abs(ip) > 0.0 ? ip / std::abs(ip) : cplx(1.0);
      const VectorXcd diff = ci - phase * cj;
      const double chord = std::sqrt(std::max(0.0, (diff.adjoint() * gram.cast<cplx>() * diff)(0, 0).real()));
      const double angle = 2.0 * std::asin(std::min(1.0, 0.5 * chord));
      if (angle < 1e-3) s.near_defective[i] = s.near_defective[j] = true;
    }
  }
}

SpectrumResult finish(const EigenDecomposition& dec, const MatrixXd& l2, const VectorXd& envelope,
                      int resolution) {
  SpectrumResult s;
  s.resolution = resolution;
  const std::vector<int> order = spectral_order(dec.values);
  const int m = static_cast<int>(order.size());
  s.eigenvalues.resize(m);
  for (int k = 0; k < m; ++k) s.eigenvalues(k) = dec.values(order[k]);
  if (dec.vectors.size() > 0) {
    s.coefficients.resize(m, m);
    const MatrixXcd g = l2.cast<cplx>();
    for (int k = 0; k < m; ++k) {
      VectorXcd c = dec.vectors.col(order[k]);
      const double nrm = std::sqrt((c.adjoint() * g * c)(0, 0).real());
      s.coefficients.col(k) = c / nrm;
    }
    s.eigenvectors = envelope.cast<cplx>().asDiagonal() * s.coefficients;
  }
  s.trusted.assign(m, false);
  flag_near_defective(s, l2);
  return s;
}

} // namespace

VectorXd ModelOperator::interior_nodes() const { return grid->nodes.segment(1, grid->n - 1); }

MatrixXd ModelOperator::gram(bool sobolev) const {
  const int n = grid->n;
  if (!sobolev) return grid->weights.segment(1, n - 1).asDiagonal();
  // z' at all nodes from interior values (z(±1) = 0)
  const MatrixXd d1 = grid->diff1.block(0, 1, n + 1, n - 1);
  return d1.transpose() * grid->weights.asDiagonal() * d1;
}

ModelOperator build_model(const Profile& p, double epsilon, int n, bool self_adjoint) {
  if (n < 16) throw std::invalid_argument("build_model: n >= 16 required");
  if (!(epsilon > 0.0)) throw std::invalid_argument("build_model: epsilon > 0 required");
  ModelOperator op;
  op.epsilon = epsilon;
  op.self_adjoint = self_adjoint;
  op.grid = std::make_shared<const CollocationGrid>(CollocationGrid::chebyshev(n));
  const MatrixXd d2 = op.grid->diff2.block(1, 1, n - 1, n - 1);
  const cplx f = self_adjoint ? cplx(-epsilon * epsilon, 0.0) : I * (epsilon * epsilon);
  op.matrix = f * d2.cast<cplx>();
  for (int j = 0; j < n - 1; ++j) op.matrix(j, j) += p.eval(op.grid->nodes(j + 1));
  return op;
}

double OSOperator::epsilon() const { return 1.0 / std::sqrt(alpha * reynolds); }

OSOperator build_os(const Profile& p, double alpha, double reynolds, int n) {
  if (n < 32) throw std::invalid_argument("build_os: n >= 32 required");
  if (alpha == 0.0 || !std::isfinite(alpha)) throw std::invalid_argument("build_os: alpha != 0 required");
  if (!(reynolds > 0.0)) throw std::invalid_argument("build_os: R > 0 required");
  const int m = n - 1;
  OSOperator op;
  op.alpha = alpha;
  op.reynolds = reynolds;
  op.n = n;
  op.nodes = chebyshev_points(n).segment(1, m);
  const VectorXd w = chebyshev_interior_weights(n);
  std::vector<MatrixXd> d = differentiation_matrices(chebyshev_differences(n, 1, n - 1), w, 4);
  d.insert(d.begin(), MatrixXd::Identity(m, m));

  // derivatives of the envelope g = (1 - x²)²
  auto envelope = [](const VectorXd& x, int k) -> VectorXd {
    const VectorXd s = (1.0 - x.array().square()).matrix();
    switch (k) {
    case 0: return s.array().square();
    case 1: return -4.0 * x.array() * s.array();
    case 2: return 12.0 * x.array().square() - 4.0;
    case 3: return 24.0 * x.array();
    default: return VectorXd::Constant(x.size(), 24.0);
    }
  };
  static const int binom[5][5] = {{1}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1}};
  auto y_deriv = [&](int k) {
    MatrixXd y = MatrixXd::Zero(m, m);
    for (int l = 0; l <= k; ++l) y += binom[k][l] * envelope(op.nodes, k - l).asDiagonal() * d[l];
    return y;
  };
  const MatrixXd y0 = y_deriv(0), y2 = y_deriv(2), y4 = y_deriv(4);
  const double a2 = alpha * alpha;
  const MatrixXd lap = y2 - a2 * y0;
  const MatrixXd bih = y4 - 2.0 * a2 * y2 + a2 * a2 * y0;
  VectorXd q(m), q2(m);
  for (int j = 0; j < m; ++j) {
    q(j) = p.eval(op.nodes(j), 0);
    q2(j) = p.eval(op.nodes(j), 2);
  }
  const cplx iar = I * (alpha * reynolds);
  op.a_matrix = bih.cast<cplx>() - iar * (q.asDiagonal() * lap - q2.asDiagonal() * y0).cast<cplx>();
  op.b_matrix = -iar * lap.cast<cplx>();
  const VectorXd sv = singular_values(op.b_matrix);
  op.b_condition = sv(0) / sv(sv.size() - 1);
  if (!(op.b_condition <= 1e14))
    throw NumericalError(ErrorKind::SingularB, "disc", "build_os",
                         "condition number of B exceeds 1e14");
  op.s_matrix = op.b_matrix.partialPivLu().solve(op.a_matrix);
  op.envelope = envelope(op.nodes, 0);

  // exact Gram matrices: y has degree n+2, so n+4 Gauss–Legendre points suffice
  const QuadratureRule gl = gauss_legendre(n + 4);
  const VectorXd t = Eigen::Map<const VectorXd>(gl.nodes.data(), gl.nodes.size());
  const VectorXd wt = Eigen::Map<const VectorXd>(gl.weights.data(), gl.weights.size());
  const MatrixXd e = interpolation_matrix(op.nodes, w, t);
  const MatrixXd yt0 = envelope(t, 0).asDiagonal() * e;
  const MatrixXd yt1 = envelope(t, 1).asDiagonal() * e + envelope(t, 0).asDiagonal() * (e * d[1]);
  op.l2_gram = yt0.transpose() * wt.asDiagonal() * yt0;
  op.sobolev_gram = yt1.transpose() * wt.asDiagonal() * yt1;
  return op;
}

SpectrumResult eigensolve(const ModelOperator& op, bool want_vectors) {
  EigenDecomposition dec = eigen_decompose(op.matrix, want_vectors);
  return finish(dec, op.gram(false), VectorXd::Ones(op.size()), op.grid->n);
}

SpectrumResult eigensolve(const OSOperator& op, bool want_vectors) {
  EigenDecomposition dec = eigen_decompose(op.s_matrix, want_vectors);
  return finish(dec, op.l2_gram, op.envelope, op.n);
}

std::vector<TrustedEigenvalue> filter_spurious(const SpectrumResult& low, const SpectrumResult& high,
                                               double tol) {
  std::vector<TrustedEigenvalue> out;
  for (int i = 0; i < low.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < high.size(); ++j) best = std::min(best, std::abs(low.eigenvalues(i) - high.eigenvalues(j)));
    if (best <= tol) out.push_back({i, low.eigenvalues(i), best});
  }
  return out;
}

std::vector<TrustedEigenvalue> mark_trusted(SpectrumResult& low, const SpectrumResult& high, double tol) {
  std::vector<TrustedEigenvalue> t = filter_spurious(low, high, tol);
  low.trusted.assign(low.size(), false);
  for (const auto& e : t) low.trusted[e.index] = true;
  return t;
}

std::vector<cplx> trusted_values(const SpectrumResult& s) {
  std::vector<cplx> out;
  for (int i = 0; i < s.size(); ++i)
    if (i < static_cast<int>(s.trusted.size()) && s.trusted[i]) out.push_back(s.eigenvalues(i));
  return out;
}

} // namespace specgraph
