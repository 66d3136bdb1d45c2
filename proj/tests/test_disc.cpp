#include "specgraph/collocation.hpp"
#include "specgraph/disc.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/quadrature.hpp"

#include <doctest.h>

#include <numbers>

using namespace specgraph;
using Eigen::MatrixXcd;
using Eigen::VectorXd;

namespace {

const double pi = std::numbers::pi;

double nearest(const Eigen::VectorXcd& ev, cplx z) {
  double d = 1e300;
  for (int i = 0; i < ev.size(); ++i) d = std::min(d, std::abs(ev(i) - z));
  return d;
}

} // namespace

TEST_CASE("Chebyshev differentiation is exact on polynomials") {
  const CollocationGrid g = CollocationGrid::chebyshev(24);
  const VectorXd& x = g.nodes;
  const VectorXd f = x.array().pow(7) - 3.0 * x.array().square() + 1.0;
  const VectorXd df = 7.0 * x.array().pow(6) - 6.0 * x.array();
  const VectorXd d2f = 42.0 * x.array().pow(5) - 6.0;
  CHECK((g.diff1 * f - df).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((g.diff2 * f - d2f).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(x(0) == 1.0);
  CHECK(x(24) == -1.0);
  for (int j = 0; j <= 24; ++j) CHECK(x(j) == -x(24 - j));
}

TEST_CASE("interior-node fourth derivative is exact") {
  const int n = 20;
  const VectorXd x = chebyshev_points(n).segment(1, n - 1);
  const auto d = differentiation_matrices(chebyshev_differences(n, 1, n - 1), chebyshev_interior_weights(n), 4);
  const VectorXd f = x.array().pow(8);
  const VectorXd d4f = 1680.0 * x.array().pow(4);
  CHECK((d[3] * f - d4f).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("quadrature rules") {
  const CollocationGrid g = CollocationGrid::chebyshev(32);
  CHECK(g.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  const QuadratureRule gl = gauss_legendre(10), cc = clenshaw_curtis(20);
  for (int k = 0; k <= 19; ++k) {
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], k);
    CHECK(std::abs(s - exact) <= 1e-13);
    s = 0.0;
    for (std::size_t i = 0; i < cc.nodes.size(); ++i) s += cc.weights[i] * std::pow(cc.nodes[i], k);
    CHECK(std::abs(s - exact) <= 1e-13);
  }
  for (std::size_t i = 1; i < gl.nodes.size(); ++i) CHECK(gl.nodes[i] > gl.nodes[i - 1]);
}

TEST_CASE("q = 0 reproduces the Dirichlet Laplacian") {
  const Profile zero = Profile::polynomial({0.0});
  for (double eps : {1.0, 0.3}) {
    const SpectrumResult s = eigensolve(build_model(zero, eps, 64), false);
    for (int k = 1; k <= 10; ++k) {
      const cplx exact(0.0, -eps * eps * std::pow(k * pi / 2, 2));
      CHECK(std::abs(s.eigenvalues(k - 1) - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
    }
    const SpectrumResult h = eigensolve(build_model(zero, eps, 64, true), false);
    for (int k = 1; k <= 10; ++k)
      CHECK(nearest(h.eigenvalues, eps * eps * std::pow(k * pi / 2, 2)) <= 1e-8);
  }
}

TEST_CASE("self-adjoint variant has a real spectrum") {
  const SpectrumResult s = eigensolve(build_model(Profile::couette(), 0.05, 120, true), false);
  for (int i = 0; i < 40; ++i) CHECK(std::abs(s.eigenvalues(i).imag()) <= 1e-8);
}

TEST_CASE("Couette spectrum is symmetric under reflection in the imaginary axis") {
  const Profile p = Profile::couette();
  SpectrumResult lo = eigensolve(build_model(p, 0.05, 200), false);
  const SpectrumResult hi = eigensolve(build_model(p, 0.05, 400), false);
  const auto t = mark_trusted(lo, hi, 1e-2);
  REQUIRE(t.size() > 20);
  int checked = 0;
  for (const auto& e : t)
    if (e.value.imag() > -3.0) {
      CHECK(nearest(lo.eigenvalues, -std::conj(e.value)) <= 1e-6);
      ++checked;
    }
  CHECK(checked > 10);
  // strict filter still keeps the well-resolved top of the spectrum
  const auto strict = filter_spurious(lo, hi, 1e-8);
  CHECK(strict.size() >= 10);
}

TEST_CASE("spurious filter") {
  SpectrumResult a, b;
  a.eigenvalues.resize(3);
  a.eigenvalues << cplx(0, -1), cplx(1, -1), cplx(5, 5);
  b.eigenvalues.resize(2);
  b.eigenvalues << cplx(0, -1.001), cplx(1, -1);
  const auto t = mark_trusted(a, b, 1e-2);
  REQUIRE(t.size() == 2);
  CHECK(t[0].index == 0);
  CHECK(t[0].distance == doctest::Approx(1e-3));
  CHECK(a.trusted == std::vector<bool>{true, true, false});
  CHECK(trusted_values(a).size() == 2);
  CHECK(filter_spurious(a, SpectrumResult{}, 1.0).empty());
}

TEST_CASE("eigenvectors are unit in the discrete L2 norm") {
  const ModelOperator op = build_model(Profile::couette(), 0.1, 64);
  const SpectrumResult s = eigensolve(op);
  const Eigen::MatrixXd w = op.gram(false);
  for (int k = 0; k < 5; ++k) {
    const Eigen::VectorXcd v = s.coefficients.col(k);
    CHECK((v.adjoint() * w.cast<cplx>() * v)(0, 0).real() == doctest::Approx(1.0));
    CHECK((op.matrix * v - s.eigenvalues(k) * v).norm() <= 1e-8 * op.matrix.norm());
  }
}

TEST_CASE("near-defective pairs are flagged") {
  ModelOperator op = build_model(Profile::polynomial({0.0}), 1.0, 16);
  const int m = op.size();
  op.matrix = MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) op.matrix(i, i) = cplx(i, -1.0 - i);
  op.matrix(1, 1) = op.matrix(0, 0);
  op.matrix(0, 1) = 1.0; // Jordan block
  const SpectrumResult s = eigensolve(op);
  int flagged = 0;
  for (bool f : s.near_defective) flagged += f;
  CHECK(flagged == 2);
  CHECK(s.near_defective[0]);
  CHECK(s.near_defective[1]);
}

TEST_CASE("Orr-Sommerfeld: plane Poiseuille reference eigenvalue") {
  // Classical clamped-channel mode at α = 1, R = 10^4: c = 0.23752649 + 0.00373967i
  const Profile poiseuille = Profile::polynomial({1.0, 0.0, -1.0});
  const OSOperator op = build_os(poiseuille, 1.0, 1e4, 120);
  const SpectrumResult s = eigensolve(op, false);
  CHECK(std::abs(s.eigenvalues(0) - cplx(0.23752649, 0.00373967)) <= 1e-7);
  CHECK(op.b_condition < 1e14);
}

TEST_CASE("Orr-Sommerfeld basis satisfies the clamped conditions") {
  const OSOperator op = build_os(Profile::couette(), 1.0, 400.0, 48);
  CHECK(op.epsilon() == doctest::Approx(0.05));
  CHECK(op.size() == 47);
  // envelope vanishes with its derivative at the walls, so y does too
  for (int j = 0; j < op.size(); ++j) CHECK(op.envelope(j) == doctest::Approx(std::pow(1 - op.nodes(j) * op.nodes(j), 2)));
  // Gram matrices are symmetric positive definite
  CHECK((op.l2_gram - op.l2_gram.transpose()).norm() <= 1e-12 * op.l2_gram.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.sobolev_gram);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  // integral of y = (1-x²)² (p ≡ 1) against itself: 256/315
  Eigen::VectorXd one = Eigen::VectorXd::Ones(op.size());
  CHECK(one.dot(op.l2_gram * one) == doctest::Approx(256.0 / 315.0).epsilon(1e-12));
  // ∫ (y')² = ∫ 16x²(1-x²)² = 256/105
  CHECK(one.dot(op.sobolev_gram * one) == doctest::Approx(256.0 / 105.0).epsilon(1e-12));
}

TEST_CASE("Orr-Sommerfeld Couette spectrum converges and decays") {
  const Profile p = Profile::couette();
  SpectrumResult lo = eigensolve(build_os(p, 1.0, 400.0, 100), false);
  const SpectrumResult hi = eigensolve(build_os(p, 1.0, 400.0, 160), false);
  const auto t = mark_trusted(lo, hi, 1e-6);
  CHECK(t.size() >= 10);
  for (const auto& e : t) CHECK(e.value.imag() < 0.0); // Couette flow is linearly stable
}

TEST_CASE("builder argument validation") {
  CHECK_THROWS_AS(build_model(Profile::couette(), 0.05, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_model(Profile::couette(), 0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(build_os(Profile::couette(), 1.0, 400.0, 20), std::invalid_argument);
  CHECK_THROWS_AS(build_os(Profile::couette(), 0.0, 400.0, 64), std::invalid_argument);
}

TEST_CASE("B is the negative-definite form of D^2 - alpha^2 on the clamped basis") {
  const int n = 40, m = n - 1;
  const double alpha = 1.0, r = 400.0;
  const OSOperator op = build_os(Profile::couette(), alpha, r, n);
  const VectorXd x = chebyshev_points(n).segment(1, m);
  const VectorXd w = chebyshev_interior_weights(n);
  const auto d = differentiation_matrices(chebyshev_differences(n, 1, n - 1), w, 2);

  // collocated rows: y'' - α² y at the nodes, with y = (1 - x²)² p
  Eigen::MatrixXd lap = (12.0 * x.array().square() - 4.0).matrix().asDiagonal() * Eigen::MatrixXd::Identity(m, m);
  lap += 2.0 * (-4.0 * x.array() * (1.0 - x.array().square())).matrix().asDiagonal() * d[0];
  lap += (1.0 - x.array().square()).square().matrix().asDiagonal() * d[1];
  lap -= alpha * alpha * (1.0 - x.array().square()).square().matrix().asDiagonal() * Eigen::MatrixXd::Identity(m, m);
  const MatrixXcd b_scaled = op.b_matrix / cplx(0.0, -alpha * r);
  CHECK((b_scaled - lap.cast<cplx>()).norm() <= 1e-9 * lap.norm());

  // ∫ y_i (y_j'' - α² y_j) by exact Gauss–Legendre equals -(∫ y_i' y_j' + α² ∫ y_i y_j)
  const QuadratureRule gl = gauss_legendre(n + 4);
  const VectorXd t = Eigen::Map<const VectorXd>(gl.nodes.data(), gl.nodes.size());
  const VectorXd wt = Eigen::Map<const VectorXd>(gl.weights.data(), gl.weights.size());
  const Eigen::MatrixXd e = interpolation_matrix(x, w, t);
  const VectorXd s = (1.0 - t.array().square()).matrix();
  const Eigen::MatrixXd y0 = s.array().square().matrix().asDiagonal() * e;
  const Eigen::MatrixXd y2 = (12.0 * t.array().square() - 4.0).matrix().asDiagonal() * e +
                             2.0 * (-4.0 * t.array() * s.array()).matrix().asDiagonal() * (e * d[0]) +
                             s.array().square().matrix().asDiagonal() * (e * d[1]);
  const Eigen::MatrixXd form = y0.transpose() * wt.asDiagonal() * (y2 - alpha * alpha * y0);
  const Eigen::MatrixXd expected = -(op.sobolev_gram + alpha * alpha * op.l2_gram);
  CHECK((form - expected).norm() <= 1e-9 * expected.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (form + form.transpose()));
  CHECK(es.eigenvalues().maxCoeff() < 0.0);
}

TEST_CASE("Orr-Sommerfeld eigenvalue count above Im = -1 grows like sqrt(R)") {
  auto count = [](double r, int n) {
    const Profile p = Profile::couette();
    SpectrumResult lo = eigensolve(build_os(p, 1.0, r, n), false);
    mark_trusted(lo, eigensolve(build_os(p, 1.0, r, 2 * n), false), 1e-2);
    int c = 0;
    for (cplx z : trusted_values(lo)) c += z.imag() > -1.0;
    return c;
  };
  const int c1 = count(400.0, 240), c4 = count(1600.0, 480);
  REQUIRE(c1 > 5);
  CHECK(double(c4) / c1 >= 1.7);
  CHECK(double(c4) / c1 <= 2.3);
}
