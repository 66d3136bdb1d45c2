#pragma once

#include "specgraph/graph.hpp"

#include <string>
#include <vector>

namespace specgraph {

/// i Q_branch(μ) = rhs(k) with rhs = σ επ(k - 1/4) on γ± and σ επk on γ∞.
/// σ = ±1 is the sign of Re(i Q_branch) along the curve. It fixes the direction
/// of the phase count; the quarter-phase shift is not symmetric under k -> -k,
/// so the orientation cannot be absorbed into the index sign.
struct QuantizationRule {
  CurveKind branch = CurveKind::Infinity;
  int k = 1;
  int orientation = 1;

  double rhs(double epsilon) const;
};

struct WkbEigenvalue {
  CurveKind branch = CurveKind::Infinity;
  int k = 0;
  cplx mu;
  double residual = 0.0;          // |i Q_branch(μ) - rhs(k)|
  double distance_to_curve = 0.0; // to the traced polyline
};

struct WkbOptions {
  double tol = 1e-12;
  int max_iter = 60;
  double delta = 0.05;
  ActionOptions action;
};

/// Complex Newton on F(λ) = i Q_branch(λ) - rhs(k). Throws NoConvergence, or
/// WanderedOffCurve if the root ends farther than 2δ from `curve`.
WkbEigenvalue solve_quantization(const Profile& p, double epsilon, const QuantizationRule& rule,
                                 cplx seed, const Curve& curve, const WkbOptions& opts = {});

struct WkbEnumeration {
  std::vector<WkbEigenvalue> eigenvalues;
  std::vector<std::string> notes; // per-k failures and exclusions
};

/// Vertices of the curve outside the δ-balls around a, b and λ0.
std::vector<cplx> trimmed_vertices(const SpectralGraph& g, CurveKind kind, double delta);

/// All quantization roots on the three curves outside the δ-balls at a, b, λ0.
WkbEnumeration enumerate_wkb(const Profile& p, double epsilon, const SpectralGraph& g,
                             const WkbOptions& opts = {});

/// N+(λ) = Q+/(iπε), N-(λ) = -Q-/(iπε), N(λ) = Q/(iπε) (real part).
/// Throws OffCurve when the first-order distance |Re Q| / |Q'| exceeds delta.
double counting_function(const Profile& p, double epsilon, cplx lambda, CurveKind branch,
                         double delta = 0.05, const ActionOptions& ao = {});

struct MatchRecord {
  CurveKind branch = CurveKind::Infinity;
  int k = 0;
  cplx predicted;
  cplx nearest;              // greedy partner (nearest unassigned computed value)
  double distance = 0.0;
  bool within = false;       // distance <= Cε²
  int circle_count = 0;      // computed values inside the radius-Cε² circle
  bool matched = false;      // a partner was available
};

struct MatchSummary {
  int predicted = 0;
  int computed = 0;
  int within = 0;
  int singleton_within = 0;  // within and circle_count == 1
  double match_rate = 0.0;   // within / predicted
  double max_distance = 0.0;
  double mean_distance = 0.0;
  double max_distance_over_eps2 = 0.0;
  int unmatched_predicted = 0;
  int unmatched_computed = 0;
  double min_prediction_separation = 0.0;
  bool circles_disjoint = true; // predictions >= 2Cε² apart
  double radius = 0.0;
};

struct MatchReport {
  std::vector<MatchRecord> records;
  MatchSummary summary;
};

MatchReport match_spectra(const std::vector<WkbEigenvalue>& predicted, const std::vector<cplx>& computed,
                          double c, double epsilon);

} // namespace specgraph
