#include "specgraph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specgraph {

double segment_distance(cplx z, cplx p0, cplx p1) {
  const cplx d = p1 - p0;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - p0);
  double t = ((z - p0) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (p0 + t * d));
}

double polyline_distance(cplx z, const std::vector<cplx>& poly) {
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  if (poly.size() == 1) return std::abs(z - poly.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i)
    best = std::min(best, segment_distance(z, poly[i], poly[i + 1]));
  return best;
}

double polyline_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  double h = 0.0;
  for (cplx z : a) h = std::max(h, polyline_distance(z, b));
  for (cplx z : b) h = std::max(h, polyline_distance(z, a));
  return h;
}

double point_set_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const std::vector<cplx>& from, const std::vector<cplx>& to) {
    double h = 0.0;
    for (cplx z : from) {
      double best = std::numeric_limits<double>::infinity();
      for (cplx w : to) best = std::min(best, std::abs(z - w));
      h = std::max(h, best);
    }
    return h;
  };
  return std::max(directed(a, b), directed(b, a));
}

bool polygon_contains(const std::vector<cplx>& poly, cplx z) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const cplx pi = poly[i], pj = poly[j];
    if ((pi.imag() > z.imag()) != (pj.imag() > z.imag())) {
      double x = pj.real() + (z.imag() - pj.imag()) * (pi.real() - pj.real()) / (pi.imag() - pj.imag());
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_cross(cplx p0, cplx p1, cplx q0, cplx q1) {
  const double d1 = cross(p1 - p0, q0 - p0), d2 = cross(p1 - p0, q1 - p0);
  const double d3 = cross(q1 - q0, p0 - q0), d4 = cross(q1 - q0, p1 - q0);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

} // namespace

bool polygon_self_intersects(const std::vector<cplx>& poly) {
  const std::size_t n = poly.size();
  if (n < 4) return false;
  // O(n^2) is fine for a few thousand vertices
  for (std::size_t i = 0; i < n; ++i) {
    const cplx p0 = poly[i], p1 = poly[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue; // adjacent through the closing edge
      if (segments_cross(p0, p1, poly[j], poly[(j + 1) % n])) return true;
    }
  }
  return false;
}

} // namespace specgraph
