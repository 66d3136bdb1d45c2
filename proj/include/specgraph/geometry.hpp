#pragma once

#include <complex>
#include <vector>

namespace specgraph {

using cplx = std::complex<double>;

double segment_distance(cplx z, cplx p0, cplx p1);

/// Distance from z to a polyline (a single vertex counts as a point).
double polyline_distance(cplx z, const std::vector<cplx>& poly);

/// Symmetric Hausdorff distance between polylines, measured from the vertices
/// of each to the other polyline.
double polyline_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Symmetric Hausdorff distance between finite point sets; +inf if exactly one is empty.
double point_set_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Even-odd rule; points on the boundary may land on either side.
bool polygon_contains(const std::vector<cplx>& closed_polygon, cplx z);

/// True when two non-adjacent edges of the closed polygon intersect.
bool polygon_self_intersects(const std::vector<cplx>& closed_polygon);

} // namespace specgraph
