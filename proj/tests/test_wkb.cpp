#include "specgraph/disc.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/wkb.hpp"

#include <doctest.h>

#include <numbers>

using namespace specgraph;

namespace {

const SpectralGraph& couette() {
  static const SpectralGraph g = [] {
    const Profile p = Profile::couette();
    return assemble_graph(p, Semistrip::for_profile(p));
  }();
  return g;
}

cplx point_on_gamma_inf(double im) {
  const auto& v = couette().gamma_inf.vertices;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i].imag() <= im) {
      const double s = (im - v[i - 1].imag()) / (v[i].imag() - v[i - 1].imag());
      return v[i - 1] + s * (v[i] - v[i - 1]);
    }
  return v.back();
}

} // namespace

TEST_CASE("quantization right-hand sides") {
  const double eps = 0.05;
  CHECK(QuantizationRule{CurveKind::Infinity, 3, 1}.rhs(eps) == doctest::Approx(3 * eps * std::numbers::pi));
  CHECK(QuantizationRule{CurveKind::Plus, 3, 1}.rhs(eps) == doctest::Approx(2.75 * eps * std::numbers::pi));
  CHECK(QuantizationRule{CurveKind::Minus, 1, -1}.rhs(eps) == doctest::Approx(-0.75 * eps * std::numbers::pi));
}

TEST_CASE("gamma_inf roots for q = x sit on the imaginary axis") {
  const Profile p = Profile::couette();
  const double eps = 0.02;
  const WkbEnumeration e = enumerate_wkb(p, eps, couette());
  int n_inf = 0;
  double prev = 1.0;
  for (const WkbEigenvalue& w : e.eigenvalues) {
    CHECK(w.residual <= 1e-12);
    if (w.branch != CurveKind::Infinity) continue;
    ++n_inf;
    CHECK(std::abs(w.mu.real()) <= 1e-6);
    CHECK(w.mu.imag() < prev);
    prev = w.mu.imag();
  }
  CHECK(n_inf > 10);
}

TEST_CASE("Newton basin: perturbed seeds converge to the same root") {
  const Profile p = Profile::couette();
  const double eps = 0.05;
  const WkbEnumeration e = enumerate_wkb(p, eps, couette());
  REQUIRE_FALSE(e.eigenvalues.empty());
  for (std::size_t i = 0; i < e.eigenvalues.size(); i += 4) {
    const WkbEigenvalue& w = e.eigenvalues[i];
    QuantizationRule rule{w.branch, w.k, 1};
    // recover the orientation the enumeration used
    if (std::abs(rule.rhs(eps) - (cplx(0, 1) * action(p, w.mu, defining_side(w.branch))).real()) > 1e-8)
      rule.orientation = -1;
    const double r = 0.25 * eps * eps;
    for (cplx d : {cplx(r, 0), cplx(0, r), cplx(-r, 0), cplx(0, -r)}) {
      const WkbEigenvalue again = solve_quantization(p, eps, rule, w.mu + d, couette().curve(w.branch));
      CHECK(std::abs(again.mu - w.mu) < 1e-10);
    }
  }
}

TEST_CASE("huge delta trims everything") {
  WkbOptions o;
  o.delta = 100.0;
  const WkbEnumeration e = enumerate_wkb(Profile::couette(), 0.05, couette(), o);
  CHECK(e.eigenvalues.empty());
  CHECK(e.notes.size() == 3);
}

TEST_CASE("counting function along gamma_inf") {
  const Profile p = Profile::couette();
  const cplx lam = point_on_gamma_inf(-2.0);
  const double n1 = counting_function(p, 0.05, lam, CurveKind::Infinity);
  const double n2 = counting_function(p, 0.025, lam, CurveKind::Infinity);
  CHECK(n2 / n1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(0.05 * n1 == doctest::Approx(0.025 * n2).epsilon(1e-12));

  // brute force: eigenvalues above Im λ
  const ModelOperator op = build_model(p, 0.05, 200);
  const SpectrumResult s = eigensolve(op, false);
  int brute = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s.eigenvalues[i].imag() > lam.imag()) ++brute;
  CHECK(std::abs(n1 - brute) <= 2.0);
}

TEST_CASE("counting function increases down the curve") {
  const Profile p = Profile::couette();
  double prev = -1.0;
  for (double im : {-1.0, -1.5, -2.0, -3.0}) {
    const double n = counting_function(p, 0.05, point_on_gamma_inf(im), CurveKind::Infinity);
    CHECK(n > prev);
    prev = n;
  }
}

TEST_CASE("counting function rejects points off the curve") {
  try {
    counting_function(Profile::couette(), 0.05, cplx(0.7, -2.0), CurveKind::Infinity, 0.05);
    FAIL("expected OffCurve");
  } catch (const NumericalError& e) {
    CHECK(e.kind() == ErrorKind::OffCurve);
  }
}

TEST_CASE("matching") {
  const double eps = 0.05, c = 10.0;
  std::vector<WkbEigenvalue> pred;
  std::vector<cplx> comp;
  for (int k = 0; k < 5; ++k) {
    WkbEigenvalue w;
    w.k = k + 1;
    w.mu = cplx(0.0, -1.0 - 0.2 * k);
    pred.push_back(w);
    comp.push_back(w.mu);
  }
  MatchReport r = match_spectra(pred, comp, c, eps);
  CHECK(r.summary.match_rate == 1.0);
  CHECK(r.summary.max_distance == 0.0);
  CHECK(r.summary.singleton_within == 5);
  CHECK(r.summary.circles_disjoint);

  // global greedy: the closer pair wins the contested point
  std::vector<cplx> one{cplx(0.0, -1.01)};
  r = match_spectra(pred, one, c, eps);
  CHECK(r.records[0].matched);
  CHECK_FALSE(r.records[1].matched);
  CHECK(r.summary.unmatched_predicted == 4);

  r = match_spectra({}, comp, c, eps);
  CHECK(r.summary.predicted == 0);
  CHECK(r.summary.unmatched_computed == 5);

  // predictions closer than 2Cε² break disjointness
  pred[1].mu = pred[0].mu - cplx(0.0, 0.01);
  r = match_spectra(pred, comp, c, eps);
  CHECK_FALSE(r.summary.circles_disjoint);
}
