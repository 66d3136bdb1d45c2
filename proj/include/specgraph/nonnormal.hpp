#pragma once

#include "specgraph/disc.hpp"
#include "specgraph/graph.hpp"

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

namespace specgraph {

enum class NormKind { L2, Sobolev };

std::string_view to_string(NormKind k);

struct ResolventValue {
  double value = 0.0;      // ||(M - λ)^{-1}|| in the chosen norm
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool saturated = false;  // σmax/σmin beyond 0.1/u: value is rounding-limited
};

/// Resolvent norms 1/σ_min(F (M - λ) F^{-1}) with W = F^H F the Gram matrix of
/// the inner product. F M F^{-1} is formed once; each λ then costs one SVD.
class ResolventEvaluator {
public:
  ResolventEvaluator(const Eigen::MatrixXcd& m, const Eigen::MatrixXd& gram);

  static ResolventEvaluator for_operator(const ModelOperator& op, NormKind kind);
  static ResolventEvaluator for_operator(const OSOperator& op, NormKind kind);

  ResolventValue operator()(cplx lambda) const;
  int size() const { return static_cast<int>(t_.rows()); }

private:
  Eigen::MatrixXcd t_;
};

ResolventValue resolvent_norm(const ModelOperator& op, cplx lambda, NormKind kind);
ResolventValue resolvent_norm(const OSOperator& op, cplx lambda, NormKind kind);

struct Rect {
  double re_min = 0.0, re_max = 0.0, im_min = 0.0, im_max = 0.0;
};

struct PseudospectraGrid {
  Rect rect;
  int nx = 0, ny = 0;
  NormKind norm_kind = NormKind::L2;
  std::vector<double> values;  // row-major, iy outer (im ascending), ix inner (re ascending)
  std::vector<bool> saturated;

  cplx node(int ix, int iy) const;
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
};

/// nx, ny >= 2. Cells are independent; values do not depend on evaluation order.
PseudospectraGrid pseudospectra(const ResolventEvaluator& eval, const Rect& rect, int nx, int ny,
                                NormKind kind);

/// Region bounded by γ+ (reversed), γ- and [a, b].
struct OmegaRegion {
  std::vector<cplx> boundary; // closed implicitly from a back to b

  bool contains(cplx z) const;
  double boundary_distance(cplx z) const;
  Rect bounding_box() const;
};

/// Throws NumericalError(DegenerateRegion) if the polygon self-intersects.
OmegaRegion omega_region(const SpectralGraph& g);

enum class Builder { Model, ModelSelfAdjoint, OrrSommerfeld };

std::string_view to_string(Builder b);

struct GrowthOptions {
  double alpha = 1.0;        // Orr–Sommerfeld: R = 1/(α ε²)
  int n_min = 200;
  double n_per_inv_eps = 12.0;
  double filter_tol = 1e-2;  // two-resolution trust for Riesz sweeps
  double m_factor = 0.5;     // M(ε) = floor(m_factor/ε)
};

/// n(ε) = max(n_min, ceil(n_per_inv_eps/ε)).
int resolution_for(double epsilon, const GrowthOptions& opts);

struct GrowthSample {
  double epsilon = 0.0;
  double value = 0.0;
  int n = 0;
  int m = 0;              // Riesz selection size (0 for resolvent sweeps)
  bool saturated = false;
  bool skipped = false;   // excluded from the fit
  std::string note;
};

struct GrowthReport {
  std::string quantity;  // "resolvent" | "riesz"
  Builder builder = Builder::Model;
  NormKind norm_kind = NormKind::L2;
  cplx lambda;
  std::vector<GrowthSample> samples; // ε descending
  double slope = 0.0;                // d log(value) / d(1/ε)
  double intercept = 0.0;
  double r_squared = 0.0;
  int fitted = 0;
  std::vector<std::string> notes;
};

/// Least-squares line of log(value) against 1/ε over unsaturated, unskipped samples.
void fit_growth(GrowthReport& report);

/// Resolvent-norm sweep. With `omega`, λ must lie inside it and at least
/// `min_boundary_distance` from its boundary (std::invalid_argument otherwise).
GrowthReport growth_fit(const Profile& p, cplx lambda, const std::vector<double>& eps_list,
                        Builder builder, NormKind kind, const GrowthOptions& opts = {},
                        const OmegaRegion* omega = nullptr, double min_boundary_distance = 0.0);

/// Condition number of the Gram matrix of the M trusted eigenfunctions with the
/// largest Im λ, each normalised in the norm given by `gram` (coefficient
/// coordinates). Throws TooFewTrusted or DefectiveBasis.
double riesz_constant(const SpectrumResult& s, const Eigen::MatrixXd& gram, int m);
double riesz_constant(const ModelOperator& op, const SpectrumResult& s, int m, NormKind kind);
double riesz_constant(const OSOperator& op, const SpectrumResult& s, int m, NormKind kind);

/// Riesz-constant sweep with M(ε) = floor(m_factor/ε). ε values whose selection
/// contains a near-defective mode are skipped and reported.
GrowthReport riesz_growth_fit(const Profile& p, const std::vector<double>& eps_list, Builder builder,
                              NormKind kind, const GrowthOptions& opts = {});

} // namespace specgraph
