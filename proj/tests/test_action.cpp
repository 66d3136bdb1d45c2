#include "specgraph/action.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/quadrature.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace specgraph;

namespace {

const cplx I(0.0, 1.0);

// Raw oracle for Q: composite Gauss–Legendre on the real segment, with the
// square root continued sample by sample from its principal value at +1.
cplx real_line_q(const Profile& p, cplx lambda, int panels = 400) {
  const QuadratureRule gl = gauss_legendre(8);
  cplx sum = 0.0;
  cplx prev = std::sqrt(I * (p.eval(cplx(1.0)) - lambda));
  for (int k = panels - 1; k >= 0; --k) {
    const double lo = -1.0 + 2.0 * k / panels, hi = -1.0 + 2.0 * (k + 1) / panels;
    for (int j = 7; j >= 0; --j) {
      const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[j];
      cplx w = std::sqrt(I * (p.eval(cplx(x)) - lambda));
      if (std::abs(w - prev) > std::abs(w + prev)) w = -w;
      prev = w;
      sum += 0.5 * (hi - lo) * gl.weights[j] * w;
    }
  }
  return sum;
}

std::vector<cplx> random_lambdas(const Profile& p, int count, unsigned seed) {
  const Semistrip st = Semistrip::for_profile(p);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> out;
  for (int k = 0; k < count; ++k)
    out.emplace_back(st.a + (st.b - st.a) * (0.01 + 0.98 * u(rng)), -st.im_cutoff * (0.005 + 0.99 * u(rng)));
  return out;
}

} // namespace

TEST_CASE("closed form for q = x") {
  const Profile x = Profile::couette();
  const cplx q0 = action(x, 0.0, Side::Plus);
  CHECK(std::abs(q0 - (2.0 / 3.0) * std::exp(I * std::numbers::pi / 4.0)) < 1e-12);

  // Q+ = (2/3) s(1) (1 - λ), Q- = (2/3) s(-1) (-1 - λ) with the tracked endpoint roots
  for (cplx l : random_lambdas(x, 50, 3)) {
    const cplx s1 = std::sqrt(I * (1.0 - l));
    const cplx sm = (l.real() > -1.0 ? -1.0 : 1.0) * std::sqrt(I * (-1.0 - l));
    CHECK(std::abs(action(x, l, Side::Plus) - (2.0 / 3.0) * s1 * (1.0 - l)) < 1e-12);
    CHECK(std::abs(action(x, l, Side::Minus) - (2.0 / 3.0) * sm * (-1.0 - l)) < 1e-12);
  }
}

TEST_CASE("endpoint values vanish") {
  for (const Profile& p : {Profile::couette(), Profile::cubic(0.4), Profile::shifted_quadratic(-2.0)}) {
    CHECK(action(p, p.b(), Side::Plus) == cplx(0.0));
    CHECK(action(p, p.a(), Side::Minus) == cplx(0.0));
  }
}

TEST_CASE("Q = Q+ - Q- and the joined path agrees with direct real-line quadrature") {
  for (const Profile& p : {Profile::couette(), Profile::shifted_quadratic(-2.0), Profile::cubic(1.0)}) {
    for (cplx l : random_lambdas(p, 100, 11)) {
      const ActionValue v = action_value(p, l);
      CHECK(std::abs(v.q_full - (v.q_plus - v.q_minus)) <= 1e-9);
      CHECK(std::abs(action(p, l, Side::Full) - v.q_full) <= 1e-12);
    }
    for (cplx l : random_lambdas(p, 10, 5)) {
      if (l.imag() > -0.2) continue; // keep the real-line oracle smooth
      CHECK(std::abs(action(p, l, Side::Full) - real_line_q(p, l)) < 1e-9);
    }
  }
  const Profile x = Profile::couette();
  const cplx l(0.0, -0.5);
  CHECK(std::abs(action(x, l, Side::Full) - real_line_q(x, l)) < 1e-10);
}

TEST_CASE("doubling the node count changes the result by < 1e-10") {
  ActionOptions fine;
  fine.nodes = 128;
  for (const Profile& p : {Profile::couette(), Profile::shifted_quadratic(-2.0)})
    for (cplx l : random_lambdas(p, 30, 17))
      for (Side s : {Side::Plus, Side::Minus, Side::Full})
        CHECK(std::abs(action(p, l, s) - action(p, l, s, fine)) < 1e-10);
}

TEST_CASE("derivative matches central finite differences") {
  const double h = 1e-6;
  auto fd = [&](const Profile& p, cplx l, Side s) {
    return (action(p, l + h, s) - action(p, l - h, s)) / (2 * h);
  };
  const Profile x = Profile::couette();
  const cplx l1(0.0, -0.3);
  CHECK(std::abs(action_derivative(x, l1, Side::Full) - fd(x, l1, Side::Full)) < 1e-6);
  const Profile sq = parse_profile("poly:4,4,1");
  const cplx l2(4.0, -0.1);
  CHECK(std::abs(action_derivative(sq, l2, Side::Minus) - fd(sq, l2, Side::Minus)) < 1e-6);
  for (cplx l : random_lambdas(sq, 20, 23))
    for (Side s : {Side::Plus, Side::Minus, Side::Full})
      CHECK(std::abs(action_derivative(sq, l, s) - fd(sq, l, s)) < 1e-6 * std::max(1.0, std::abs(fd(sq, l, s))));
}

TEST_CASE("derivative grows near b but stays finite") {
  const Profile x = Profile::couette();
  const double d1 = std::abs(action_derivative(x, cplx(1.0 - 1e-2, -1e-2), Side::Plus));
  const double d2 = std::abs(action_derivative(x, cplx(1.0 - 1e-4, -1e-4), Side::Plus));
  CHECK(std::isfinite(d2));
  CHECK(d2 < d1); // Q+' ~ (b - λ)^{1/2} for q = x
  CHECK(d2 / d1 == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("Cauchy–Riemann residual away from the branch points") {
  const double h = 1e-4;
  for (const Profile& p : {Profile::couette(), Profile::shifted_quadratic(-2.0)})
    for (cplx l : random_lambdas(p, 20, 29)) {
      if (std::abs(l - p.a()) < 0.1 || std::abs(l - p.b()) < 0.1 || l.imag() > -2 * h) continue;
      for (Side s : {Side::Plus, Side::Minus, Side::Full}) {
        const cplx dx = (action(p, l + h, s) - action(p, l - h, s)) / (2 * h);
        const cplx dy = (action(p, l + I * h, s) - action(p, l - I * h, s)) / (2 * h);
        // analytic: ∂F/∂y = i ∂F/∂x
        CHECK(std::abs(dy - I * dx) <= 1e-6 * std::max(1.0, std::abs(dx)));
      }
    }
}

TEST_CASE("option validation") {
  ActionOptions bad;
  bad.nodes = 8;
  CHECK_THROWS_AS(action(Profile::couette(), cplx(0.0, -0.5), Side::Plus, bad), std::invalid_argument);
}
