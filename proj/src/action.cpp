#include "specgraph/action.hpp"

#include "specgraph/errors.hpp"
#include "specgraph/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace specgraph {

std::string_view to_string(Side side) {
  switch (side) {
  case Side::Plus: return "plus";
  case Side::Minus: return "minus";
  case Side::Full: return "full";
  }
  return "?";
}

namespace {

// Nodes t in (0, 1), sorted descending, with weights for ∫_0^1.
struct UnitRule {
  std::vector<double> t;
  std::vector<double> w;
};

const UnitRule& unit_rule(int n) {
  thread_local std::map<int, UnitRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  QuadratureRule gl = gauss_legendre(n);
  UnitRule r;
  for (int i = n - 1; i >= 0; --i) {
    r.t.push_back(0.5 * (gl.nodes[i] + 1.0));
    r.w.push_back(0.5 * gl.weights[i]);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

class SegmentTracker {
public:
  SegmentTracker(const Profile& p, cplx lambda, cplx xi, cplx delta, int max_depth)
      : p_(p), lambda_(lambda), xi_(xi), delta_(delta), max_depth_(max_depth) {}

  cplx point(double t) const { return xi_ + t * t * delta_; }

  // Branch of the integrand at t1 continued from (t0, w0).
  cplx advance(double t0, cplx w0, double t1, int depth = 0) const {
    cplx c = root_integrand(p_, point(t1), lambda_);
    if ((c * std::conj(w0)).real() < 0.0) c = -c;
    double jump = std::abs(std::arg(c * std::conj(w0)));
    if (jump <= std::numbers::pi / 4.0) return c;
    if (depth >= max_depth_)
      throw NumericalError(ErrorKind::BranchAmbiguity, "action", "action",
                           "argument jump stays above pi/4 after refinement");
    double tm = 0.5 * (t0 + t1);
    cplx wm = advance(t0, w0, tm, depth + 1);
    return advance(tm, wm, t1, depth + 1);
  }

private:
  const Profile& p_;
  cplx lambda_;
  cplx xi_;
  cplx delta_;
  int max_depth_;
};

ActionJet integrate_segment(const Profile& p, cplx lambda, cplx xi, double endpoint,
                            const ActionOptions& opts) {
  const cplx delta = cplx(endpoint, 0.0) - xi;
  if (std::abs(delta) == 0.0) return {cplx(0.0), cplx(0.0)};
  const UnitRule& rule = unit_rule(opts.nodes);
  SegmentTracker tracker(p, lambda, xi, delta, opts.max_depth);

  const cplx minus_half_i(0.0, -0.5);
  double t_prev = 1.0;
  cplx w_prev = endpoint_branch(p, lambda, endpoint);
  // λ equals q(endpoint) but Newton left ξ_λ a rounding error away: the
  // segment has length ~1e-16 and contributes nothing
  if (std::abs(w_prev) == 0.0) return {cplx(0.0), cplx(0.0)};
  ActionJet jet{cplx(0.0), cplx(0.0)};
  for (std::size_t j = 0; j < rule.t.size(); ++j) {
    const double t = rule.t[j];
    cplx w = tracker.advance(t_prev, w_prev, t);
    const cplx jac = 2.0 * t * delta;
    jet.value += rule.w[j] * jac * w;
    jet.derivative += rule.w[j] * jac * (minus_half_i / w);
    t_prev = t;
    w_prev = w;
  }
  return jet;
}

void check_options(const ActionOptions& opts) {
  if (opts.nodes < 16) throw std::invalid_argument("action: quadrature needs at least 16 nodes");
}

} // namespace

cplx root_integrand(const Profile& p, cplx xi, cplx lambda) {
  const cplx u = p.eval(xi) - lambda;
  // i * (u_r + i u_i) = -u_i + i u_r, formed explicitly to keep signed zeros sane
  return std::sqrt(cplx(-u.imag(), u.real()));
}

cplx endpoint_branch(const Profile& p, cplx lambda, double endpoint) {
  // On the real axis Re(i(q - λ)) = Im λ <= 0, so the continued root leaves the
  // principal sheet exactly where q(x) passes Re λ.
  const double q = p.eval(endpoint);
  const cplx w = std::sqrt(cplx(lambda.imag(), q - lambda.real()));
  return q < lambda.real() ? -w : w;
}

ActionJet action_jet(const Profile& p, cplx lambda, Side side, const ActionOptions& opts) {
  check_options(opts);
  const cplx xi = turning_point(p, lambda, opts.root_tol).xi;
  switch (side) {
  case Side::Plus: return integrate_segment(p, lambda, xi, 1.0, opts);
  case Side::Minus: return integrate_segment(p, lambda, xi, -1.0, opts);
  case Side::Full: {
    ActionJet plus = integrate_segment(p, lambda, xi, 1.0, opts);
    ActionJet minus = integrate_segment(p, lambda, xi, -1.0, opts);
    return {plus.value - minus.value, plus.derivative - minus.derivative};
  }
  }
  return {};
}

cplx action(const Profile& p, cplx lambda, Side side, const ActionOptions& opts) {
  return action_jet(p, lambda, side, opts).value;
}

cplx action_derivative(const Profile& p, cplx lambda, Side side, const ActionOptions& opts) {
  return action_jet(p, lambda, side, opts).derivative;
}

ActionValue action_value(const Profile& p, cplx lambda, const ActionOptions& opts) {
  check_options(opts);
  const cplx xi = turning_point(p, lambda, opts.root_tol).xi;
  ActionValue v;
  v.q_plus = integrate_segment(p, lambda, xi, 1.0, opts).value;
  v.q_minus = integrate_segment(p, lambda, xi, -1.0, opts).value;
  v.q_full = v.q_plus - v.q_minus;
  return v;
}

} // namespace specgraph
