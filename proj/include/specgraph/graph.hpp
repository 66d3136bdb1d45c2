#pragma once

#include "specgraph/action.hpp"
#include "specgraph/profile.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace specgraph {

enum class CurveKind { Plus, Minus, Infinity };

std::string_view to_string(CurveKind kind);

/// Side of the action whose real part defines the curve.
Side defining_side(CurveKind kind);

enum class Termination {
  RealEndpoint,          // reached a or b
  Cutoff,                // reached Im λ = -im_cutoff
  Target,                // reached the requested point
  StallNearBranchPoint,  // corrector failed within δ of a or b; curve kept up to there
};

std::string_view to_string(Termination t);

struct Curve {
  CurveKind kind = CurveKind::Plus;
  std::vector<cplx> vertices;
  std::vector<double> residuals; // |Re F| per vertex
  Termination termination = Termination::RealEndpoint;
};

struct TraceOptions {
  double tol = 1e-10;        // |Re F| accepted at a vertex
  double step_init = 2e-2;
  double step_min = 1e-4;
  double step_max = 5e-2;
  double delta = 0.05;       // branch-point neighbourhood for stall handling
  int max_vertices = 200000;
  ActionOptions action;
};

/// Where a trace stops: near `target` (which is then appended exactly as the
/// last vertex), or on the horizontal line Im λ = -im_floor.
struct TraceUntil {
  std::optional<cplx> target;
  std::optional<double> im_floor;
};

struct Lambda0Options {
  double tol = 1e-12;
  int max_iter = 60;
  ActionOptions action;
};

/// (a+b)/2 - i (b-a)/4.
cplx default_lambda0_seed(const Profile& p);

/// Two-dimensional Newton on (Re Q+, Re Q-). Throws NoConvergence or OutsideStrip.
cplx find_lambda0(const Profile& p, const Semistrip& strip, cplx seed,
                  const Lambda0Options& opts = {});

/// Predictor–corrector continuation of Re F = 0 from `from`. The initial
/// direction is the tangent pointing towards `initial_heading`.
/// Throws StepCollapse; a collapse within δ of a or b ends the curve with
/// Termination::StallNearBranchPoint instead.
Curve trace_curve(const Profile& p, const Semistrip& strip, CurveKind kind, cplx from,
                  cplx initial_heading, const TraceUntil& until, const TraceOptions& opts = {});

struct SpectralGraph {
  cplx lambda0;
  Curve gamma_plus;  // λ0 -> b  (Q+(b) = 0)
  Curve gamma_minus; // λ0 -> a  (Q-(a) = 0)
  Curve gamma_inf;   // λ0 -> Im λ = -im_cutoff
  Semistrip strip;
  double lambda0_residual = 0.0; // max(|Re Q+|, |Re Q-|) at λ0
  std::string pairing_note;

  const Curve& curve(CurveKind kind) const;
  /// Distance from z to the union of the three polylines.
  double distance(cplx z) const;

  /// Comparison window: -im_cutoff <= Im z, outside the δ-balls at a, b and λ0.
  bool in_trimmed_window(cplx z, double delta) const;
  std::vector<cplx> trim(const std::vector<cplx>& values, double delta) const;
};

struct GraphOptions {
  TraceOptions trace;
  Lambda0Options lambda0;
  std::optional<cplx> seed;
};

/// find_lambda0 followed by the three traces and the consistency checks.
/// Throws InconsistentGraph when γ∞ is not strictly decreasing in Im λ.
SpectralGraph assemble_graph(const Profile& p, const Semistrip& strip, const GraphOptions& opts = {});

} // namespace specgraph
