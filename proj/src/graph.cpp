#include "specgraph/graph.hpp"

#include "specgraph/errors.hpp"
#include "specgraph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specgraph {

std::string_view to_string(CurveKind kind) {
  switch (kind) {
  case CurveKind::Plus: return "plus";
  case CurveKind::Minus: return "minus";
  case CurveKind::Infinity: return "infinity";
  }
  return "?";
}

Side defining_side(CurveKind kind) {
  switch (kind) {
  case CurveKind::Plus: return Side::Plus;
  case CurveKind::Minus: return Side::Minus;
  case CurveKind::Infinity: return Side::Full;
  }
  return Side::Full;
}

std::string_view to_string(Termination t) {
  switch (t) {
  case Termination::RealEndpoint: return "real_endpoint";
  case Termination::Cutoff: return "cutoff";
  case Termination::Target: return "target";
  case Termination::StallNearBranchPoint: return "stall_near_branch_point";
  }
  return "?";
}

cplx default_lambda0_seed(const Profile& p) {
  return cplx(0.5 * (p.a() + p.b()), -0.25 * (p.b() - p.a()));
}

namespace {

struct Eval {
  bool ok = false;
  ActionJet jet;
};

// Action evaluation that reports failure instead of throwing; tracing treats
// an unevaluable point like a corrector failure.
Eval try_jet(const Profile& p, const Semistrip& strip, cplx z, Side side, const ActionOptions& ao) {
  if (!strip.contains_closed(z, 1e-12)) return {};
  try {
    return {true, action_jet(p, z, side, ao)};
  } catch (const NumericalError&) {
    return {};
  } catch (const std::invalid_argument&) {
    return {};
  }
}

// Unit tangent of Re F = 0 at a point with derivative d = F'(z).
cplx tangent_of(cplx d) { return cplx(0.0, 1.0) * std::conj(d) / std::abs(d); }

double residual_at(const Profile& p, const Semistrip& strip, cplx z, Side side,
                   const ActionOptions& ao) {
  Eval e = try_jet(p, strip, z, side, ao);
  return e.ok ? std::abs(e.jet.value.real()) : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

cplx find_lambda0(const Profile& p, const Semistrip& strip, cplx seed, const Lambda0Options& opts) {
  if (!strip.contains(seed))
    throw NumericalError(ErrorKind::OutsideStrip, "graph", "find_lambda0",
                         "seed lies outside the truncated semistrip");
  auto residual = [&](cplx z, ActionJet& jp, ActionJet& jm) {
    jp = action_jet(p, z, Side::Plus, opts.action);
    jm = action_jet(p, z, Side::Minus, opts.action);
    return std::hypot(jp.value.real(), jm.value.real());
  };
  cplx z = seed;
  ActionJet jp, jm;
  double r = residual(z, jp, jm);
  for (int it = 0; it < opts.max_iter; ++it) {
    if (std::max(std::abs(jp.value.real()), std::abs(jm.value.real())) <= opts.tol) return z;
    // analytic F: d Re F/dx = Re F', d Re F/dy = -Im F'
    const double j11 = jp.derivative.real(), j12 = -jp.derivative.imag();
    const double j21 = jm.derivative.real(), j22 = -jm.derivative.imag();
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det))
      throw NumericalError(ErrorKind::NoConvergence, "graph", "find_lambda0",
                           "singular Jacobian; try another seed");
    const double f1 = jp.value.real(), f2 = jm.value.real();
    const cplx dz((-j22 * f1 + j12 * f2) / det, (j21 * f1 - j11 * f2) / det);
    double scale = 1.0;
    bool moved = false;
    for (int h = 0; h < 40; ++h, scale *= 0.5) {
      const cplx trial = z + scale * dz;
      if (!strip.contains(trial)) continue;
      ActionJet tp, tm;
      double rt;
      try {
        rt = residual(trial, tp, tm);
      } catch (const NumericalError&) {
        continue;
      }
      if (rt < r || scale < 1e-6) {
        z = trial;
        r = rt;
        jp = tp;
        jm = tm;
        moved = true;
        break;
      }
    }
    if (!moved)
      throw NumericalError(ErrorKind::OutsideStrip, "graph", "find_lambda0",
                           "Newton iterate left the truncated semistrip");
  }
  if (std::max(std::abs(jp.value.real()), std::abs(jm.value.real())) <= opts.tol) return z;
  throw NumericalError(ErrorKind::NoConvergence, "graph", "find_lambda0",
                       "no convergence within the iteration budget; adjust the seed");
}

Curve trace_curve(const Profile& p, const Semistrip& strip, CurveKind kind, cplx from,
                  cplx initial_heading, const TraceUntil& until, const TraceOptions& opts) {
  const Side side = defining_side(kind);
  const ActionOptions& ao = opts.action;
  Curve curve;
  curve.kind = kind;

  Eval start = try_jet(p, strip, from, side, ao);
  if (!start.ok || std::abs(start.jet.value.real()) > 10.0 * opts.tol)
    throw NumericalError(ErrorKind::NoConvergence, "graph", "trace_curve",
                         "start point does not satisfy the curve equation");
  curve.vertices.push_back(from);
  curve.residuals.push_back(std::abs(start.jet.value.real()));

  cplx t = tangent_of(start.jet.derivative);
  if ((t * std::conj(initial_heading - from)).real() < 0.0) t = -t;

  double h = std::clamp(opts.step_init, opts.step_min, opts.step_max);
  int easy = 0;
  auto near_branch_point = [&](cplx z) {
    return std::abs(z - strip.a) <= opts.delta || std::abs(z - strip.b) <= opts.delta;
  };
  auto fail_step = [&](cplx z) -> bool {
    h *= 0.5;
    easy = 0;
    if (h >= opts.step_min) return false;
    if (near_branch_point(z)) {
      curve.termination = Termination::StallNearBranchPoint;
      return true;
    }
    throw NumericalError(ErrorKind::StepCollapse, "graph", "trace_curve",
                         "step fell below the minimum while tracing " + std::string(to_string(kind)));
  };

  while (true) {
    if (static_cast<int>(curve.vertices.size()) >= opts.max_vertices)
      throw NumericalError(ErrorKind::NoConvergence, "graph", "trace_curve",
                           "vertex budget exhausted");
    const cplx z = curve.vertices.back();

    if (until.target && std::abs(*until.target - z) <= h) {
      const cplx target = *until.target;
      double res = residual_at(p, strip, target, side, ao);
      curve.vertices.push_back(target);
      curve.residuals.push_back(std::isnan(res) ? 0.0 : res);
      const bool real_end = target.imag() == 0.0 && (target.real() == strip.a || target.real() == strip.b);
      curve.termination = real_end ? Termination::RealEndpoint : Termination::Target;
      return curve;
    }

    if (until.im_floor && t.imag() < 0.0 && z.imag() + h * t.imag() <= -*until.im_floor) {
      // Close on the cutoff line with Newton in Re λ.
      const double floor = -*until.im_floor;
      double x = (z + ((floor - z.imag()) / t.imag()) * t).real();
      bool done = false;
      for (int it = 0; it < 30; ++it) {
        Eval e = try_jet(p, strip, cplx(x, floor), side, ao);
        if (!e.ok) break;
        const double r = e.jet.value.real();
        if (std::abs(r) <= opts.tol) {
          done = std::abs(cplx(x, floor) - z) <= 1.5 * h;
          break;
        }
        const double g = e.jet.derivative.real();
        if (g == 0.0) break;
        x -= r / g;
      }
      if (done) {
        curve.vertices.emplace_back(x, floor);
        curve.residuals.push_back(residual_at(p, strip, cplx(x, floor), side, ao));
        curve.termination = Termination::Cutoff;
        return curve;
      }
      if (fail_step(z)) return curve;
      continue;
    }

    // predictor
    const cplx pred = z + h * t;
    Eval e = try_jet(p, strip, pred, side, ao);
    bool ok = false;
    int iters = 0;
    cplx lam = pred;
    if (e.ok) {
      const cplx normal = std::conj(e.jet.derivative) / std::abs(e.jet.derivative);
      for (iters = 0; iters < 8; ++iters) {
        const double r = e.jet.value.real();
        if (std::abs(r) <= opts.tol) {
          ok = true;
          break;
        }
        const double g = (e.jet.derivative * normal).real();
        if (g == 0.0 || !std::isfinite(g)) break;
        lam += (-r / g) * normal;
        if (std::abs(lam - pred) > 0.5 * h) break;
        e = try_jet(p, strip, lam, side, ao);
        if (!e.ok) break;
      }
    }
    if (ok) {
      const cplx chord = lam - z;
      // reject jumps onto a neighbouring level curve
      ok = std::abs(chord) > 0.0 && (chord * std::conj(t)).real() >= 0.7 * std::abs(chord) &&
           std::abs(e.jet.derivative) > 0.0;
    }
    if (!ok) {
      if (fail_step(z)) return curve;
      continue;
    }
    cplx t_new = tangent_of(e.jet.derivative);
    if ((t_new * std::conj(t)).real() < 0.0) t_new = -t_new;
    t = t_new;
    curve.vertices.push_back(lam);
    curve.residuals.push_back(std::abs(e.jet.value.real()));
    if (iters <= 3 && ++easy >= 5) {
      h = std::min(2.0 * h, opts.step_max);
      easy = 0;
    }
  }
}

const Curve& SpectralGraph::curve(CurveKind kind) const {
  switch (kind) {
  case CurveKind::Plus: return gamma_plus;
  case CurveKind::Minus: return gamma_minus;
  case CurveKind::Infinity: return gamma_inf;
  }
  return gamma_inf;
}

double SpectralGraph::distance(cplx z) const {
  return std::min({polyline_distance(z, gamma_plus.vertices), polyline_distance(z, gamma_minus.vertices),
                   polyline_distance(z, gamma_inf.vertices)});
}

bool SpectralGraph::in_trimmed_window(cplx z, double delta) const {
  return z.imag() >= -strip.im_cutoff && std::abs(z - cplx(strip.a, 0.0)) > delta &&
         std::abs(z - cplx(strip.b, 0.0)) > delta && std::abs(z - lambda0) > delta;
}

std::vector<cplx> SpectralGraph::trim(const std::vector<cplx>& values, double delta) const {
  std::vector<cplx> out;
  for (cplx z : values)
    if (in_trimmed_window(z, delta)) out.push_back(z);
  return out;
}

SpectralGraph assemble_graph(const Profile& p, const Semistrip& strip, const GraphOptions& opts) {
  SpectralGraph g;
  g.strip = strip;
  g.lambda0 = find_lambda0(p, strip, opts.seed.value_or(default_lambda0_seed(p)), opts.lambda0);
  g.lambda0_residual = std::max(std::abs(action(p, g.lambda0, Side::Plus, opts.lambda0.action).real()),
                                std::abs(action(p, g.lambda0, Side::Minus, opts.lambda0.action).real()));
  const cplx a(strip.a, 0.0), b(strip.b, 0.0);

  g.gamma_plus = trace_curve(p, strip, CurveKind::Plus, g.lambda0, b, {b, std::nullopt}, opts.trace);
  g.gamma_minus = trace_curve(p, strip, CurveKind::Minus, g.lambda0, a, {a, std::nullopt}, opts.trace);
  g.gamma_inf = trace_curve(p, strip, CurveKind::Infinity, g.lambda0, g.lambda0 - cplx(0.0, 1.0),
                            {std::nullopt, strip.im_cutoff}, opts.trace);
  g.pairing_note = "gamma_plus ends at b=q(1) since Q+(b)=0; gamma_minus ends at a=q(-1) since Q-(a)=0";

  const auto& v = g.gamma_inf.vertices;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i].imag() < v[i - 1].imag()))
      throw NumericalError(ErrorKind::InconsistentGraph, "graph", "assemble_graph",
                           "gamma_inf is not single-valued in Im λ");
  for (const Curve* c : {&g.gamma_plus, &g.gamma_minus, &g.gamma_inf})
    if (polyline_distance(g.lambda0, c->vertices) > opts.trace.tol + 1e-12)
      throw NumericalError(ErrorKind::InconsistentGraph, "graph", "assemble_graph",
                           "curve does not pass through lambda0");
  return g;
}

} // namespace specgraph
