#include "specgraph/nonnormal.hpp"

#include "specgraph/errors.hpp"
#include "specgraph/geometry.hpp"
#include "specgraph/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specgraph {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

namespace {

const double kSaturation = 0.1 / std::numeric_limits<double>::epsilon();

} // namespace

std::string_view to_string(NormKind k) { return k == NormKind::L2 ? "L2" : "Sobolev"; }

std::string_view to_string(Builder b) {
  switch (b) {
  case Builder::Model: return "model";
  case Builder::ModelSelfAdjoint: return "model_self_adjoint";
  case Builder::OrrSommerfeld: return "os";
  }
  return "?";
}

ResolventEvaluator::ResolventEvaluator(const MatrixXcd& m, const MatrixXd& gram) {
  Eigen::LLT<MatrixXcd> llt(gram.cast<cplx>());
  if (llt.info() != Eigen::Success)
    throw NumericalError(ErrorKind::EigensolverFailure, "nonnormal", "resolvent_norm",
                         "Gram matrix is not positive definite");
  // W = L L^H, F = L^H:  T = L^H M L^{-H}
  const MatrixXcd lh = llt.matrixU();
  const MatrixXcd left = lh * m;
  t_ = llt.matrixL().solve(left.adjoint()).adjoint();
}

ResolventEvaluator ResolventEvaluator::for_operator(const ModelOperator& op, NormKind kind) {
  return ResolventEvaluator(op.matrix, op.gram(kind == NormKind::Sobolev));
}

ResolventEvaluator ResolventEvaluator::for_operator(const OSOperator& op, NormKind kind) {
  return ResolventEvaluator(op.s_matrix, op.gram(kind == NormKind::Sobolev));
}

ResolventValue ResolventEvaluator::operator()(cplx lambda) const {
  MatrixXcd a = t_;
  a.diagonal().array() -= lambda;
  const Eigen::VectorXd s = singular_values(std::move(a));
  ResolventValue r;
  r.sigma_max = s(0);
  r.sigma_min = s(s.size() - 1);
  const double floor = r.sigma_max / kSaturation;
  r.saturated = r.sigma_min <= floor;
  r.value = 1.0 / std::max(r.sigma_min, r.saturated ? floor : 0.0);
  return r;
}

ResolventValue resolvent_norm(const ModelOperator& op, cplx lambda, NormKind kind) {
  return ResolventEvaluator::for_operator(op, kind)(lambda);
}

ResolventValue resolvent_norm(const OSOperator& op, cplx lambda, NormKind kind) {
  return ResolventEvaluator::for_operator(op, kind)(lambda);
}

cplx PseudospectraGrid::node(int ix, int iy) const {
  const double x = rect.re_min + (rect.re_max - rect.re_min) * ix / (nx - 1);
  const double y = rect.im_min + (rect.im_max - rect.im_min) * iy / (ny - 1);
  return {x, y};
}

PseudospectraGrid pseudospectra(const ResolventEvaluator& eval, const Rect& rect, int nx, int ny,
                                NormKind kind) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("pseudospectra: nx, ny >= 2 required");
  if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min))
    throw std::invalid_argument("pseudospectra: empty rectangle");
  PseudospectraGrid g;
  g.rect = rect;
  g.nx = nx;
  g.ny = ny;
  g.norm_kind = kind;
  g.values.resize(static_cast<std::size_t>(nx) * ny);
  g.saturated.resize(g.values.size());
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const ResolventValue r = eval(g.node(ix, iy));
      const std::size_t k = static_cast<std::size_t>(iy) * nx + ix;
      g.values[k] = r.value;
      g.saturated[k] = r.saturated;
    }
  return g;
}

bool OmegaRegion::contains(cplx z) const { return z.imag() < 0.0 && polygon_contains(boundary, z); }

double OmegaRegion::boundary_distance(cplx z) const {
  std::vector<cplx> closed = boundary;
  if (!closed.empty()) closed.push_back(closed.front());
  return polyline_distance(z, closed);
}

Rect OmegaRegion::bounding_box() const {
  Rect r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
         std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (cplx z : boundary) {
    r.re_min = std::min(r.re_min, z.real());
    r.re_max = std::max(r.re_max, z.real());
    r.im_min = std::min(r.im_min, z.imag());
    r.im_max = std::max(r.im_max, z.imag());
  }
  return r;
}

OmegaRegion omega_region(const SpectralGraph& g) {
  OmegaRegion o;
  const auto& plus = g.gamma_plus.vertices;
  const auto& minus = g.gamma_minus.vertices;
  o.boundary.assign(plus.rbegin(), plus.rend()); // b -> λ0
  for (std::size_t i = 0; i < minus.size(); ++i) {
    if (i == 0 && !o.boundary.empty() && std::abs(minus[0] - o.boundary.back()) == 0.0) continue;
    o.boundary.push_back(minus[i]); // λ0 -> a
  }
  // the closing edge a -> b is the real segment
  if (o.boundary.size() < 3 || polygon_self_intersects(o.boundary))
    throw NumericalError(ErrorKind::DegenerateRegion, "nonnormal", "omega_region",
                         "boundary polygon is degenerate or self-intersecting");
  return o;
}

int resolution_for(double epsilon, const GrowthOptions& opts) {
  return std::max(opts.n_min, static_cast<int>(std::ceil(opts.n_per_inv_eps / epsilon - 1e-9)));
}

void fit_growth(GrowthReport& report) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& s : report.samples) {
    if (s.skipped || s.saturated || !(s.value > 0.0)) continue;
    const double x = 1.0 / s.epsilon, y = std::log(s.value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  report.fitted = n;
  if (n < 2) {
    report.slope = report.intercept = 0.0;
    report.r_squared = 0.0;
    report.notes.push_back("fewer than two usable samples; no fit");
    return;
  }
  const double mx = sx / n, my = sy / n;
  const double vxx = sxx - n * mx * mx, vxy = sxy - n * mx * my;
  report.slope = vxy / vxx;
  report.intercept = my - report.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (const auto& s : report.samples) {
    if (s.skipped || s.saturated || !(s.value > 0.0)) continue;
    const double y = std::log(s.value), f = report.intercept + report.slope / s.epsilon;
    ss_res += (y - f) * (y - f);
    ss_tot += (y - my) * (y - my);
  }
  report.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
}

namespace {

std::vector<double> sorted_descending(std::vector<double> eps) {
  if (eps.size() < 4) throw std::invalid_argument("growth sweep needs at least 4 epsilon values");
  for (double e : eps)
    if (!(e > 0.0)) throw std::invalid_argument("growth sweep: epsilon values must be positive");
  std::sort(eps.begin(), eps.end(), std::greater<>());
  return eps;
}

} // namespace

GrowthReport growth_fit(const Profile& p, cplx lambda, const std::vector<double>& eps_list,
                        Builder builder, NormKind kind, const GrowthOptions& opts,
                        const OmegaRegion* omega, double min_boundary_distance) {
  if (omega) {
    if (!omega->contains(lambda))
      throw std::invalid_argument("probe lambda lies outside the region Omega");
    if (omega->boundary_distance(lambda) < min_boundary_distance)
      throw std::invalid_argument("probe lambda is too close to the boundary of Omega");
  }
  GrowthReport rep;
  rep.quantity = "resolvent";
  rep.builder = builder;
  rep.norm_kind = kind;
  rep.lambda = lambda;
  for (double eps : sorted_descending(eps_list)) {
    GrowthSample s;
    s.epsilon = eps;
    s.n = resolution_for(eps, opts);
    ResolventValue r;
    if (builder == Builder::OrrSommerfeld) {
      r = resolvent_norm(build_os(p, opts.alpha, 1.0 / (opts.alpha * eps * eps), s.n), lambda, kind);
    } else {
      r = resolvent_norm(build_model(p, eps, s.n, builder == Builder::ModelSelfAdjoint), lambda, kind);
    }
    s.value = r.value;
    s.saturated = r.saturated;
    if (r.saturated) s.note = "resolvent norm at the rounding floor; excluded from the fit";
    rep.samples.push_back(s);
  }
  fit_growth(rep);
  return rep;
}

double riesz_constant(const SpectrumResult& s, const MatrixXd& gram, int m) {
  if (m < 1) throw std::invalid_argument("riesz_constant: M >= 1 required");
  if (s.coefficients.size() == 0)
    throw std::invalid_argument("riesz_constant: spectrum computed without eigenvectors");
  std::vector<int> pick;
  for (int i = 0; i < s.size() && static_cast<int>(pick.size()) < m; ++i)
    if (i < static_cast<int>(s.trusted.size()) && s.trusted[i]) pick.push_back(i);
  if (static_cast<int>(pick.size()) < m)
    throw NumericalError(ErrorKind::TooFewTrusted, "nonnormal", "riesz_constant",
                         "only " + std::to_string(pick.size()) + " trusted eigenvalues for M=" +
                             std::to_string(m));
  for (int i : pick)
    if (s.near_defective[i])
      throw NumericalError(ErrorKind::DefectiveBasis, "nonnormal", "riesz_constant",
                           "selected eigenfunction is near-defective");
  const MatrixXcd g = gram.cast<cplx>();
  MatrixXcd c(s.coefficients.rows(), m);
  for (int k = 0; k < m; ++k) {
    VectorXcd v = s.coefficients.col(pick[k]);
    c.col(k) = v / std::sqrt((v.adjoint() * g * v)(0, 0).real());
  }
  MatrixXcd gm = c.adjoint() * g * c;
  gm = 0.5 * (gm + gm.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gm, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev(ev.size() - 1) / ev(0);
}

double riesz_constant(const ModelOperator& op, const SpectrumResult& s, int m, NormKind kind) {
  return riesz_constant(s, op.gram(kind == NormKind::Sobolev), m);
}

double riesz_constant(const OSOperator& op, const SpectrumResult& s, int m, NormKind kind) {
  return riesz_constant(s, op.gram(kind == NormKind::Sobolev), m);
}

GrowthReport riesz_growth_fit(const Profile& p, const std::vector<double>& eps_list, Builder builder,
                              NormKind kind, const GrowthOptions& opts) {
  GrowthReport rep;
  rep.quantity = "riesz";
  rep.builder = builder;
  rep.norm_kind = kind;
  for (double eps : sorted_descending(eps_list)) {
    GrowthSample s;
    s.epsilon = eps;
    s.n = resolution_for(eps, opts);
    s.m = static_cast<int>(std::floor(opts.m_factor / eps + 1e-9));
    try {
      if (builder == Builder::OrrSommerfeld) {
        const double r = 1.0 / (opts.alpha * eps * eps);
        const OSOperator lo = build_os(p, opts.alpha, r, s.n);
        SpectrumResult sl = eigensolve(lo, true);
        mark_trusted(sl, eigensolve(build_os(p, opts.alpha, r, 2 * s.n), false), opts.filter_tol);
        s.value = riesz_constant(lo, sl, s.m, kind);
      } else {
        const bool sa = builder == Builder::ModelSelfAdjoint;
        const ModelOperator lo = build_model(p, eps, s.n, sa);
        SpectrumResult sl = eigensolve(lo, true);
        mark_trusted(sl, eigensolve(build_model(p, eps, 2 * s.n, sa), false), opts.filter_tol);
        s.value = riesz_constant(lo, sl, s.m, kind);
      }
      s.saturated = s.value > kSaturation;
      if (s.saturated) s.note = "Gram condition number at the rounding floor; excluded from the fit";
    } catch (const NumericalError& e) {
      if (e.kind() != ErrorKind::DefectiveBasis) throw;
      s.skipped = true;
      s.note = std::string(to_string(e.kind())) + ": " + e.what();
      rep.notes.push_back("epsilon=" + std::to_string(eps) + " skipped (" + std::string(to_string(e.kind())) + ")");
    }
    rep.samples.push_back(s);
  }
  fit_growth(rep);
  return rep;
}

} // namespace specgraph
