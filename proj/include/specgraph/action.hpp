#pragma once

#include "specgraph/profile.hpp"

#include <string_view>

namespace specgraph {

enum class Side { Plus, Minus, Full };

std::string_view to_string(Side side);

/// Branch convention for sqrt(i(q(ξ) - λ)): principal value at ξ = +1, continued
/// along the real segment to ξ = -1 and along the straight segments to ξ_λ.
/// Flipping the global sign negates every action and only re-indexes the
/// quantization conditions.
inline constexpr std::string_view kBranchNote =
    "principal sqrt at +1; continued along [-1,1] and the segments ξ_λ->±1";

struct ActionOptions {
  int nodes = 64;       // Gauss–Legendre nodes per segment (>= 16)
  int max_depth = 12;   // bisection depth of the branch-tracking guard
  double root_tol = 1e-12;
};

struct ActionValue {
  cplx q_plus;
  cplx q_minus;
  cplx q_full;
  std::string_view branch_note = kBranchNote;
};

struct ActionJet {
  cplx value;
  cplx derivative; // d/dλ
};

/// Principal sqrt(i(q(ξ) - λ)).
cplx root_integrand(const Profile& p, cplx xi, cplx lambda);

/// Integrand value at the real endpoint ±1 in the branch convention above.
cplx endpoint_branch(const Profile& p, cplx lambda, double endpoint);

/// Q±(λ) = ∫_{ξ_λ}^{±1} sqrt(i(q - λ)) dξ, Q = Q+ - Q- (the real-segment integral).
/// Straight paths with the substitution ξ = ξ_λ + t²(endpoint - ξ_λ), which
/// removes the square-root behaviour at ξ_λ. Throws NumericalError
/// (BranchAmbiguity, NoConvergence).
cplx action(const Profile& p, cplx lambda, Side side, const ActionOptions& opts = {});

/// dQ/dλ = ∫ -i / (2 sqrt(i(q - λ))) dξ along the same paths.
cplx action_derivative(const Profile& p, cplx lambda, Side side, const ActionOptions& opts = {});

/// Value and derivative sharing one turning-point solve and branch track.
ActionJet action_jet(const Profile& p, cplx lambda, Side side, const ActionOptions& opts = {});

ActionValue action_value(const Profile& p, cplx lambda, const ActionOptions& opts = {});

} // namespace specgraph
