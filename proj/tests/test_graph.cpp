#include "specgraph/errors.hpp"
#include "specgraph/geometry.hpp"
#include "specgraph/graph.hpp"

#include <doctest.h>

using namespace specgraph;

namespace {

const cplx I(0.0, 1.0);

SpectralGraph couette_graph(const GraphOptions& o = {}) {
  const Profile p = Profile::couette();
  return assemble_graph(p, Semistrip::for_profile(p), o);
}

} // namespace

TEST_CASE("polyline geometry") {
  const std::vector<cplx> seg{cplx(0, 0), cplx(1, 0)};
  CHECK(polyline_distance(cplx(0.5, 0.3), seg) == doctest::Approx(0.3));
  CHECK(polyline_distance(cplx(2, 0), seg) == doctest::Approx(1.0));
  CHECK(polyline_hausdorff(seg, {cplx(0, 0.1), cplx(1, 0.1)}) == doctest::Approx(0.1));
  CHECK(point_set_hausdorff({cplx(0, 0)}, {cplx(0, 0), cplx(0, 2)}) == doctest::Approx(2.0));
  const std::vector<cplx> square{cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)};
  CHECK(polygon_contains(square, cplx(0.5, 0.5)));
  CHECK_FALSE(polygon_contains(square, cplx(1.5, 0.5)));
  CHECK_FALSE(polygon_self_intersects(square));
  CHECK(polygon_self_intersects({cplx(0, 0), cplx(1, 1), cplx(1, 0), cplx(0, 1)}));
}

TEST_CASE("lambda0 for q = x") {
  const Profile p = Profile::couette();
  const Semistrip st = Semistrip::for_profile(p);
  const cplx l0 = find_lambda0(p, st, default_lambda0_seed(p));
  CHECK(std::abs(l0.real()) <= 1e-8);
  // explicit case: Q+(λ0) = -Q-(λ0) purely imaginary at λ0 = -i/√3
  CHECK(std::abs(l0 - cplx(0.0, -1.0 / std::sqrt(3.0))) < 1e-10);
  CHECK(std::abs(action(p, l0, Side::Plus).real()) <= 1e-12);
  CHECK(std::abs(action(p, l0, Side::Minus).real()) <= 1e-12);
  CHECK(std::abs(action(p, l0, Side::Full).real()) <= 2e-12);
  for (cplx d : {cplx(0.1, 0.1), cplx(-0.1, 0.1), cplx(0.1, -0.1), cplx(-0.1, -0.1)})
    CHECK(std::abs(find_lambda0(p, st, default_lambda0_seed(p) + d) - l0) < 1e-8);
}

TEST_CASE("lambda0 for q = (x+2)^2 lies in the strip") {
  const Profile p = parse_profile("poly:4,4,1");
  const cplx l0 = find_lambda0(p, Semistrip::for_profile(p), default_lambda0_seed(p));
  CHECK(l0.real() > 1.0);
  CHECK(l0.real() < 9.0);
  CHECK(l0.imag() < 0.0);
}

TEST_CASE("seed outside the strip is rejected") {
  const Profile p = Profile::couette();
  try {
    find_lambda0(p, Semistrip::for_profile(p), cplx(0.0, 0.5));
    FAIL("expected OutsideStrip");
  } catch (const NumericalError& e) {
    CHECK(e.kind() == ErrorKind::OutsideStrip);
  }
}

TEST_CASE("Couette graph is a Y on the imaginary axis") {
  const GraphOptions opts;
  const SpectralGraph g = couette_graph(opts);
  CHECK(g.gamma_plus.vertices.back() == cplx(1.0, 0.0));
  CHECK(g.gamma_minus.vertices.back() == cplx(-1.0, 0.0));
  CHECK(g.gamma_plus.termination == Termination::RealEndpoint);
  CHECK(g.gamma_inf.termination == Termination::Cutoff);
  CHECK(g.gamma_inf.vertices.back().imag() == doctest::Approx(-4.0));
  for (cplx v : g.gamma_inf.vertices) CHECK(std::abs(v.real()) <= 1e-6);
  for (std::size_t i = 1; i < g.gamma_inf.vertices.size(); ++i)
    CHECK(g.gamma_inf.vertices[i].imag() < g.gamma_inf.vertices[i - 1].imag());
  // arcs mirror each other under Re λ -> -Re λ
  for (cplx v : g.gamma_plus.vertices) CHECK(polyline_distance(-std::conj(v), g.gamma_minus.vertices) < 1e-6);
  for (const Curve* c : {&g.gamma_plus, &g.gamma_minus, &g.gamma_inf}) {
    CHECK(c->vertices.front() == g.lambda0);
    for (double r : c->residuals) CHECK(r <= opts.trace.tol);
    for (std::size_t i = 1; i < c->vertices.size(); ++i)
      CHECK(std::abs(c->vertices[i] - c->vertices[i - 1]) <= opts.trace.step_max * 1.5);
    for (cplx v : c->vertices) CHECK(g.strip.contains_closed(v, 1e-12));
  }
}

TEST_CASE("defining residuals hold verbatim at every vertex") {
  for (const Profile& p : {Profile::couette(), parse_profile("poly:4,4,1"), Profile::cubic(0.1)}) {
    const double cutoff = p.degree() == 3 ? 1.0 : 0.0; // stay above the critical values at ±1.22i
    const SpectralGraph g = assemble_graph(p, Semistrip::for_profile(p, cutoff));
    for (const Curve* c : {&g.gamma_plus, &g.gamma_minus, &g.gamma_inf})
      for (cplx v : c->vertices) CHECK(std::abs(action(p, v, defining_side(c->kind)).real()) <= 1e-10);
  }
}

TEST_CASE("q = (x+2)^2 graph endpoints") {
  const Profile p = parse_profile("poly:4,4,1");
  const SpectralGraph g = assemble_graph(p, Semistrip::for_profile(p));
  CHECK(g.gamma_plus.vertices.back() == cplx(9.0, 0.0));
  CHECK(g.gamma_minus.vertices.back() == cplx(1.0, 0.0));
  CHECK(g.gamma_inf.vertices.back().imag() == doctest::Approx(-16.0));
}

TEST_CASE("Re Q changes sign across gamma_inf") {
  const Profile p = parse_profile("poly:4,4,1");
  const SpectralGraph g = assemble_graph(p, Semistrip::for_profile(p));
  const double h = 10.0 * 1e-3;
  const auto& v = g.gamma_inf.vertices;
  for (std::size_t i = 2; i + 1 < v.size(); i += 3) {
    const cplx d = action_derivative(p, v[i], Side::Full);
    const cplx normal = std::conj(d) / std::abs(d);
    const double plus = action(p, v[i] + h * normal, Side::Full).real();
    const double minus = action(p, v[i] - h * normal, Side::Full).real();
    CHECK(plus * minus < 0.0);
  }
}

TEST_CASE("graph is stable under step halving") {
  const Profile p = parse_profile("poly:4,4,1");
  const Semistrip st = Semistrip::for_profile(p);
  for (double s : {0.05, 0.025}) {
    GraphOptions a, b;
    a.trace.step_init = a.trace.step_max = s;
    b.trace.step_init = b.trace.step_max = s / 2;
    const SpectralGraph ga = assemble_graph(p, st, a), gb = assemble_graph(p, st, b);
    for (CurveKind k : {CurveKind::Plus, CurveKind::Minus, CurveKind::Infinity})
      CHECK(polyline_hausdorff(ga.curve(k).vertices, gb.curve(k).vertices) <= 5 * s * s);
  }
}

TEST_CASE("trace_curve rejects a start point off the curve") {
  const Profile p = Profile::couette();
  const Semistrip st = Semistrip::for_profile(p);
  CHECK_THROWS_AS(trace_curve(p, st, CurveKind::Plus, cplx(0.3, -0.9), cplx(1.0), {cplx(1.0), std::nullopt}),
                  NumericalError);
}

TEST_CASE("trimmed window") {
  const SpectralGraph g = couette_graph();
  CHECK_FALSE(g.in_trimmed_window(g.lambda0 + 0.01, 0.05));
  CHECK_FALSE(g.in_trimmed_window(cplx(0.99, -0.01), 0.05));
  CHECK_FALSE(g.in_trimmed_window(cplx(0.0, -4.5), 0.05));
  CHECK(g.in_trimmed_window(cplx(0.0, -2.0), 0.05));
}
