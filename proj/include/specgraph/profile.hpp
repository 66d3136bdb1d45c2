#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace specgraph {

using cplx = std::complex<double>;

/// Real polynomial velocity profile q on [-1, 1].
///
/// Polynomials are entire, so evaluation at complex arguments is the analytic
/// continuation. The monotonicity invariants (q' > 0, a < b) are not enforced at
/// construction; `validate_am` reports on them.
class Profile {
public:
  /// Coefficients in increasing degree: q(x) = c0 + c1 x + ... + cn x^n.
  static Profile polynomial(std::vector<double> coefficients, std::string name = {});
  static Profile couette();                      // q = x
  static Profile cubic(double c);                // q = x + c x^3
  static Profile shifted_quadratic(double s);    // q = (x - s)^2

  const std::vector<double>& coefficients() const noexcept { return coeffs_[0]; }
  const std::string& name() const noexcept { return name_; }
  int degree() const noexcept { return static_cast<int>(coeffs_[0].size()) - 1; }

  double a() const noexcept { return a_; } // q(-1)
  double b() const noexcept { return b_; } // q(1)

  /// q, q' or q'' at z (order in {0, 1, 2}).
  cplx eval(cplx z, int order = 0) const;
  double eval(double x, int order = 0) const;

private:
  Profile(std::vector<double> coefficients, std::string name);

  std::vector<double> coeffs_[3]; // q, q', q''
  std::string name_;
  double a_ = 0.0;
  double b_ = 0.0;
};

/// Parses `builtin:couette`, `builtin:cubic:c` (c >= 0), `builtin:shifted2:s`
/// (|s| > 1) or `poly:c0,c1,...,cn`. Throws std::invalid_argument.
Profile parse_profile(std::string_view spec);

/// Truncation {a < Re λ < b, -im_cutoff <= Im λ < 0} of the semistrip Π.
struct Semistrip {
  double a = 0.0;
  double b = 0.0;
  double im_cutoff = 1.0;

  static Semistrip for_profile(const Profile& p, double im_cutoff = 0.0); // 0 -> 2(b - a)

  bool contains(cplx lambda) const; // open window
  bool contains_closed(cplx lambda, double slack = 0.0) const;
};

struct TurningPoint {
  cplx xi;
  double residual = 0.0; // |q(xi) - λ|
};

/// Root ξ of q(ξ) = λ reachable from the real root of q(x) = Re λ on [-1, 1].
///
/// The root is continued from the real seed along λ_t = Re λ + i t Im λ,
/// t: 0 -> 1, with damped Newton at each stage, so ξ depends continuously on λ.
/// Requires a <= Re λ <= b and Im λ <= 0. Throws NumericalError(NoConvergence).
TurningPoint turning_point(const Profile& p, cplx lambda, double tol = 1e-12);

struct AmSampling {
  int monotone_points = 1001;
  int re_points = 21;
  int im_points = 21;
  double im_cutoff = 0.0; // 0 -> 2(b - a)
  double tol = 1e-12;
  double injectivity_tol = 1e-9;
};

struct AmWitness {
  std::string check; // "monotone" | "solvable" | "injective"
  cplx point;        // x (real) for monotone, λ otherwise
  double value = 0.0;
  std::string note;
};

/// Partial check of the AM conditions. Conformal bijectivity of q on the
/// preimage of Π cannot be decided from samples; the injectivity test only
/// spot-checks the λ-grid.
struct AmReport {
  bool monotone = false;
  bool solvable = false;
  bool injective = false;
  bool pass = false;
  double min_derivative = 0.0;
  std::vector<AmWitness> witnesses; // at most a few per failing check
};

AmReport validate_am(const Profile& p, const AmSampling& sampling = {});

} // namespace specgraph
