#include "specgraph/wkb.hpp"

#include "specgraph/errors.hpp"
#include "specgraph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace specgraph {

namespace {

const cplx I(0.0, 1.0);

bool quarter_shift(CurveKind k) { return k != CurveKind::Infinity; }

// The sign making N± and N come out as positive counts.
double count_sign(CurveKind k) { return k == CurveKind::Minus ? -1.0 : 1.0; }

std::string k_note(CurveKind branch, int k, const std::string& what) {
  return std::string(to_string(branch)) + " k=" + std::to_string(k) + ": " + what;
}

} // namespace

double QuantizationRule::rhs(double epsilon) const {
  const double phase = quarter_shift(branch) ? k - 0.25 : static_cast<double>(k);
  return orientation * epsilon * std::numbers::pi * phase;
}

WkbEigenvalue solve_quantization(const Profile& p, double epsilon, const QuantizationRule& rule,
                                 cplx seed, const Curve& curve, const WkbOptions& opts) {
  const Side side = defining_side(rule.branch);
  const double rhs = rule.rhs(epsilon);
  const Semistrip strip = Semistrip::for_profile(p);
  auto eval = [&](cplx z, ActionJet& jet) {
    jet = action_jet(p, z, side, opts.action);
    return I * jet.value - rhs;
  };
  auto admissible = [&](cplx z) { return z.imag() <= 0.0 && z.real() >= strip.a && z.real() <= strip.b; };

  cplx z = seed;
  ActionJet jet;
  cplx f = eval(z, jet);
  bool converged = std::abs(f) <= opts.tol;
  for (int it = 0; it < opts.max_iter && !converged; ++it) {
    const cplx step = -f / (I * jet.derivative);
    double s = 1.0;
    bool moved = false;
    for (int h = 0; h < 30; ++h, s *= 0.5) {
      const cplx trial = z + s * step;
      if (!admissible(trial)) continue;
      ActionJet tj;
      cplx tf;
      try {
        tf = eval(trial, tj);
      } catch (const NumericalError&) {
        continue;
      }
      if (std::abs(tf) < std::abs(f) || h == 29) {
        z = trial;
        f = tf;
        jet = tj;
        moved = true;
        break;
      }
    }
    if (!moved) break;
    converged = std::abs(f) <= opts.tol;
  }
  if (!converged)
    throw NumericalError(ErrorKind::NoConvergence, "wkb", "solve_quantization",
                         k_note(rule.branch, rule.k, "Newton did not reach the tolerance"));
  WkbEigenvalue w;
  w.branch = rule.branch;
  w.k = rule.k;
  w.mu = z;
  w.residual = std::abs(f);
  w.distance_to_curve = polyline_distance(z, curve.vertices);
  if (w.distance_to_curve > 2.0 * opts.delta)
    throw NumericalError(ErrorKind::WanderedOffCurve, "wkb", "solve_quantization",
                         k_note(rule.branch, rule.k, "root landed farther than 2*delta from the curve"));
  return w;
}

std::vector<cplx> trimmed_vertices(const SpectralGraph& g, CurveKind kind, double delta) {
  std::vector<cplx> out;
  const cplx a(g.strip.a, 0.0), b(g.strip.b, 0.0);
  for (cplx v : g.curve(kind).vertices)
    if (std::abs(v - a) > delta && std::abs(v - b) > delta && std::abs(v - g.lambda0) > delta)
      out.push_back(v);
  return out;
}

WkbEnumeration enumerate_wkb(const Profile& p, double epsilon, const SpectralGraph& g,
                             const WkbOptions& opts) {
  WkbEnumeration out;
  const cplx a(g.strip.a, 0.0), b(g.strip.b, 0.0);
  auto excluded = [&](cplx z) {
    return std::abs(z - a) <= opts.delta || std::abs(z - b) <= opts.delta ||
           std::abs(z - g.lambda0) <= opts.delta;
  };
  for (CurveKind kind : {CurveKind::Plus, CurveKind::Minus, CurveKind::Infinity}) {
    const std::vector<cplx> v = trimmed_vertices(g, kind, opts.delta);
    if (v.empty()) {
      out.notes.push_back(std::string(to_string(kind)) + ": trimmed curve is empty");
      continue;
    }
    const Side side = defining_side(kind);
    std::vector<double> phi(v.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      phi[i] = (I * action(p, v[i], side, opts.action)).real();
      mean += phi[i];
    }
    const int sigma = mean >= 0.0 ? 1 : -1;
    for (double& f : phi) f *= sigma / (epsilon * std::numbers::pi);

    const double shift = quarter_shift(kind) ? 0.25 : 0.0;
    const auto [lo_it, hi_it] = std::minmax_element(phi.begin(), phi.end());
    const int k_lo = std::max(1, static_cast<int>(std::ceil(*lo_it + shift)));
    const int k_hi = static_cast<int>(std::floor(*hi_it + shift));

    // seeds by linear interpolation of the phase along the polyline
    std::map<int, cplx> seeds;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v.size() == 1 || i + 1 == v.size()) {
        const double target_k = phi[i] + shift;
        if (std::abs(target_k - std::round(target_k)) < 1e-12) seeds.emplace(int(std::round(target_k)), v[i]);
        continue;
      }
      const double f0 = phi[i], f1 = phi[i + 1];
      const double lo = std::min(f0, f1), hi = std::max(f0, f1);
      for (int k = static_cast<int>(std::ceil(lo + shift)); k - shift <= hi; ++k) {
        const double target = k - shift;
        const double s = f1 == f0 ? 0.0 : (target - f0) / (f1 - f0);
        seeds.emplace(k, v[i] + std::clamp(s, 0.0, 1.0) * (v[i + 1] - v[i]));
      }
    }
    for (int k = k_lo; k <= k_hi; ++k) {
      auto it = seeds.find(k);
      if (it == seeds.end()) {
        out.notes.push_back(k_note(kind, k, "no seed on the trimmed curve"));
        continue;
      }
      try {
        WkbEigenvalue w =
            solve_quantization(p, epsilon, QuantizationRule{kind, k, sigma}, it->second, g.curve(kind), opts);
        if (excluded(w.mu)) {
          out.notes.push_back(k_note(kind, k, "root inside a delta-ball of a, b or lambda0"));
          continue;
        }
        out.eigenvalues.push_back(w);
      } catch (const NumericalError& e) {
        out.notes.push_back(k_note(kind, k, std::string(to_string(e.kind())) + ": " + e.what()));
      }
    }
  }
  return out;
}

double counting_function(const Profile& p, double epsilon, cplx lambda, CurveKind branch, double delta,
                         const ActionOptions& ao) {
  const ActionJet jet = action_jet(p, lambda, defining_side(branch), ao);
  const double dist = std::abs(jet.value.real()) / std::max(std::abs(jet.derivative), 1e-300);
  if (dist > delta)
    throw NumericalError(ErrorKind::OffCurve, "wkb", "counting_function",
                         "lambda is not within delta of the curve (first-order distance " +
                             std::to_string(dist) + ")");
  return (count_sign(branch) * jet.value / (I * std::numbers::pi * epsilon)).real();
}

MatchReport match_spectra(const std::vector<WkbEigenvalue>& predicted, const std::vector<cplx>& computed,
                          double c, double epsilon) {
  MatchReport rep;
  MatchSummary& s = rep.summary;
  s.predicted = static_cast<int>(predicted.size());
  s.computed = static_cast<int>(computed.size());
  s.radius = c * epsilon * epsilon;
  if (predicted.empty()) {
    s.unmatched_computed = s.computed;
    return rep;
  }

  // greedy: globally shortest pairs first
  struct Pair {
    double d;
    int i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(predicted.size() * computed.size());
  for (int i = 0; i < s.predicted; ++i)
    for (int j = 0; j < s.computed; ++j) pairs.push_back({std::abs(predicted[i].mu - computed[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.d != y.d) return x.d < y.d;
    return x.i != y.i ? x.i < y.i : x.j < y.j;
  });
  std::vector<int> partner(s.predicted, -1);
  std::vector<bool> used(s.computed, false);
  for (const Pair& pr : pairs) {
    if (partner[pr.i] >= 0 || used[pr.j]) continue;
    partner[pr.i] = pr.j;
    used[pr.j] = true;
  }

  double sum = 0.0;
  int matched = 0;
  for (int i = 0; i < s.predicted; ++i) {
    MatchRecord r;
    r.branch = predicted[i].branch;
    r.k = predicted[i].k;
    r.predicted = predicted[i].mu;
    for (cplx z : computed)
      if (std::abs(z - r.predicted) <= s.radius) ++r.circle_count;
    if (partner[i] >= 0) {
      r.matched = true;
      r.nearest = computed[partner[i]];
      r.distance = std::abs(r.nearest - r.predicted);
      r.within = r.distance <= s.radius;
      sum += r.distance;
      ++matched;
      s.max_distance = std::max(s.max_distance, r.distance);
    } else {
      r.distance = std::numeric_limits<double>::infinity();
    }
    if (r.within) {
      ++s.within;
      if (r.circle_count == 1) ++s.singleton_within;
    }
    rep.records.push_back(r);
  }
  s.match_rate = static_cast<double>(s.within) / s.predicted;
  s.mean_distance = matched ? sum / matched : 0.0;
  s.max_distance_over_eps2 = s.max_distance / (epsilon * epsilon);
  s.unmatched_predicted = s.predicted - matched;
  s.unmatched_computed = s.computed - matched;
  s.min_prediction_separation = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.predicted; ++i)
    for (int j = i + 1; j < s.predicted; ++j)
      s.min_prediction_separation = std::min(s.min_prediction_separation, std::abs(predicted[i].mu - predicted[j].mu));
  if (s.predicted < 2) s.min_prediction_separation = 0.0;
  s.circles_disjoint = s.predicted < 2 || s.min_prediction_separation >= 2.0 * s.radius;
  return rep;
}

} // namespace specgraph
