#include "specgraph/profile.hpp"

#include "specgraph/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specgraph {

namespace {

std::vector<double> differentiate(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
  return d;
}

template <typename T>
T horner(const std::vector<double>& c, T z) {
  T acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
    throw std::invalid_argument("invalid number '" + std::string(text) + "' in profile spec");
  return value;
}

} // namespace

Profile::Profile(std::vector<double> coefficients, std::string name) : name_(std::move(name)) {
  while (coefficients.size() > 1 && coefficients.back() == 0.0) coefficients.pop_back();
  if (coefficients.empty()) coefficients.push_back(0.0);
  coeffs_[0] = std::move(coefficients);
  coeffs_[1] = differentiate(coeffs_[0]);
  coeffs_[2] = differentiate(coeffs_[1]);
  a_ = eval(-1.0);
  b_ = eval(1.0);
}

Profile Profile::polynomial(std::vector<double> coefficients, std::string name) {
  if (coefficients.empty()) throw std::invalid_argument("polynomial profile needs coefficients");
  for (double c : coefficients)
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite profile coefficient");
  if (name.empty()) {
    name = "poly:";
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
      char buf[32];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, coefficients[k]);
      (void)ec;
      if (k) name += ',';
      name.append(buf, ptr);
    }
  }
  return Profile(std::move(coefficients), std::move(name));
}

Profile Profile::couette() { return Profile({0.0, 1.0}, "builtin:couette"); }

Profile Profile::cubic(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("builtin:cubic requires c >= 0");
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, c);
  (void)ec;
  return Profile({0.0, 1.0, 0.0, c}, "builtin:cubic:" + std::string(buf, ptr));
}

Profile Profile::shifted_quadratic(double s) {
  if (!(std::abs(s) > 1.0)) throw std::invalid_argument("builtin:shifted2 requires |s| > 1");
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, s);
  (void)ec;
  return Profile({s * s, -2.0 * s, 1.0}, "builtin:shifted2:" + std::string(buf, ptr));
}

cplx Profile::eval(cplx z, int order) const {
  if (order < 0 || order > 2) throw std::invalid_argument("Profile::eval: order must be 0, 1 or 2");
  return horner(coeffs_[order], z);
}

double Profile::eval(double x, int order) const {
  if (order < 0 || order > 2) throw std::invalid_argument("Profile::eval: order must be 0, 1 or 2");
  return horner(coeffs_[order], x);
}

Profile parse_profile(std::string_view spec) {
  constexpr std::string_view builtin = "builtin:";
  constexpr std::string_view poly = "poly:";
  if (spec.substr(0, poly.size()) == poly) {
    std::string_view rest = spec.substr(poly.size());
    if (rest.empty()) throw std::invalid_argument("poly: profile needs coefficients");
    std::vector<double> coeffs;
    while (true) {
      auto comma = rest.find(',');
      coeffs.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return Profile::polynomial(std::move(coeffs), std::string(spec));
  }
  if (spec.substr(0, builtin.size()) == builtin) {
    std::string_view rest = spec.substr(builtin.size());
    if (rest == "couette") return Profile::couette();
    if (rest.substr(0, 6) == "cubic:") return Profile::cubic(parse_double(rest.substr(6)));
    if (rest.substr(0, 9) == "shifted2:")
      return Profile::shifted_quadratic(parse_double(rest.substr(9)));
  }
  throw std::invalid_argument("unrecognised profile spec '" + std::string(spec) + "'");
}

Semistrip Semistrip::for_profile(const Profile& p, double im_cutoff) {
  Semistrip s;
  s.a = p.a();
  s.b = p.b();
  s.im_cutoff = im_cutoff > 0.0 ? im_cutoff : 2.0 * (p.b() - p.a());
  return s;
}

bool Semistrip::contains(cplx lambda) const {
  return lambda.real() > a && lambda.real() < b && lambda.imag() < 0.0 &&
         lambda.imag() >= -im_cutoff;
}

bool Semistrip::contains_closed(cplx lambda, double slack) const {
  return lambda.real() >= a - slack && lambda.real() <= b + slack && lambda.imag() <= slack &&
         lambda.imag() >= -im_cutoff - slack;
}

namespace {

// Real root of q(x) = target on [-1, 1] for increasing q (clamped to the ends).
double real_seed(const Profile& p, double target) {
  double lo = -1.0, hi = 1.0;
  if (target <= p.a()) return -1.0;
  if (target >= p.b()) return 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    if (p.eval(mid) < target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Damped Newton for q(ξ) = λ from ξ0. Returns false on failure.
bool newton_root(const Profile& p, cplx lambda, cplx& xi, double tol, int max_iter) {
  cplx f = p.eval(xi) - lambda;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(f) <= tol) return true;
    cplx df = p.eval(xi, 1);
    if (std::abs(df) == 0.0) return false;
    cplx step = f / df;
    double s = 1.0;
    cplx trial = xi - step;
    cplx ft = p.eval(trial) - lambda;
    for (int h = 0; h < 30 && std::abs(ft) > std::abs(f); ++h) {
      s *= 0.5;
      trial = xi - s * step;
      ft = p.eval(trial) - lambda;
    }
    if (std::abs(trial - xi) == 0.0 && std::abs(ft) > tol) return false;
    xi = trial;
    f = ft;
  }
  return std::abs(f) <= tol;
}

} // namespace

TurningPoint turning_point(const Profile& p, cplx lambda, double tol) {
  const double width = p.b() - p.a();
  const double slack = 1e-12 * std::max(1.0, std::abs(width));
  if (!(lambda.real() >= p.a() - slack && lambda.real() <= p.b() + slack) ||
      !(lambda.imag() <= slack) || !std::isfinite(lambda.imag()))
    throw std::invalid_argument("turning_point: λ outside the closed semistrip");

  cplx xi = real_seed(p, lambda.real());
  const double re = lambda.real();
  const double im = std::min(lambda.imag(), 0.0);
  // Newton polish at t = 0 (the seed is exact up to bisection precision).
  double t = 0.0;
  double dt = 0.25;
  if (!newton_root(p, cplx(re, 0.0), xi, tol, 50))
    throw NumericalError(ErrorKind::NoConvergence, "profile", "turning_point", "real seed");
  while (t < 1.0) {
    double t_next = std::min(1.0, t + dt);
    cplx candidate = xi;
    // A first-order root move is |Δλ| / |q'(ξ)|; a much larger jump means Newton
    // switched to a different root.
    const double expected =
        std::abs((t_next - t) * im) / std::max(1e-300, std::abs(p.eval(xi, 1)));
    if (newton_root(p, cplx(re, t_next * im), candidate, tol, 60) &&
        std::abs(candidate - xi) <= 3.0 * expected + 1e-10) {
      xi = candidate;
      t = t_next;
      dt = std::min(0.5, dt * 2.0);
    } else {
      dt *= 0.5;
      if (dt < 1e-7)
        throw NumericalError(ErrorKind::NoConvergence, "profile", "turning_point",
                             "continuation step collapsed");
    }
  }
  TurningPoint tp;
  tp.xi = xi;
  tp.residual = std::abs(p.eval(xi) - lambda);
  if (tp.residual > tol)
    throw NumericalError(ErrorKind::NoConvergence, "profile", "turning_point", "residual above tolerance");
  return tp;
}

AmReport validate_am(const Profile& p, const AmSampling& sampling) {
  AmReport report;
  constexpr std::size_t max_witnesses = 5;

  // (i) strict monotonicity on a dense grid
  report.monotone = p.a() < p.b();
  report.min_derivative = std::numeric_limits<double>::infinity();
  std::size_t mono_witnesses = 0;
  const int m = std::max(2, sampling.monotone_points);
  for (int i = 0; i < m; ++i) {
    double x = -1.0 + 2.0 * i / (m - 1);
    double d = p.eval(x, 1);
    report.min_derivative = std::min(report.min_derivative, d);
    if (!(d > 0.0)) {
      report.monotone = false;
      if (mono_witnesses++ < max_witnesses)
        report.witnesses.push_back({"monotone", cplx(x, 0.0), d, "q'(x) <= 0"});
    }
  }
  if (!(p.a() < p.b()) && mono_witnesses == 0)
    report.witnesses.push_back({"monotone", cplx(-1.0, 0.0), p.b() - p.a(), "q(1) <= q(-1)"});

  if (!report.monotone) {
    // Turning points are seeded from the monotone real branch; skip the rest.
    report.pass = false;
    return report;
  }

  // (ii) solvability over the truncated Π, (iii) injectivity spot check
  const double cutoff = sampling.im_cutoff > 0.0 ? sampling.im_cutoff : 2.0 * (p.b() - p.a());
  const int nr = std::max(2, sampling.re_points);
  const int ni = std::max(2, sampling.im_points);
  std::vector<cplx> lambdas, xis;
  report.solvable = true;
  std::size_t solve_witnesses = 0;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < ni; ++j) {
      cplx lambda(p.a() + (p.b() - p.a()) * i / (nr - 1), -cutoff * j / (ni - 1));
      try {
        TurningPoint tp = turning_point(p, lambda, sampling.tol);
        if (tp.xi.imag() > sampling.tol) {
          report.solvable = false;
          if (solve_witnesses++ < max_witnesses)
            report.witnesses.push_back({"solvable", lambda, tp.xi.imag(), "Im xi > 0"});
        }
        lambdas.push_back(lambda);
        xis.push_back(tp.xi);
      } catch (const NumericalError& e) {
        report.solvable = false;
        if (solve_witnesses++ < max_witnesses)
          report.witnesses.push_back({"solvable", lambda, 0.0, e.what()});
      }
    }
  }
  report.injective = true;
  std::size_t inj_witnesses = 0;
  for (std::size_t i = 0; i < xis.size(); ++i) {
    for (std::size_t j = i + 1; j < xis.size(); ++j) {
      if (std::abs(xis[i] - xis[j]) <= sampling.injectivity_tol) {
        report.injective = false;
        if (inj_witnesses++ < max_witnesses)
          report.witnesses.push_back({"injective", lambdas[i], std::abs(lambdas[i] - lambdas[j]),
                                      "shares its turning point with another grid λ"});
      }
    }
  }
  report.pass = report.monotone && report.solvable && report.injective;
  return report;
}

} // namespace specgraph
