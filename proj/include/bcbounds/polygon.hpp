#pragma once

#include <span>
#include <vector>

#include "bcbounds/regions.hpp"

namespace bcbounds {

// One supporting half-plane lambda*R1 + (1-lambda)*R2 <= value.
struct SupportSample {
  double lambda = 0.0;
  double value = 0.0;
};

// Upper-right boundary of a convex, down-closed region in the non-negative
// quadrant. Vertices run from the R1 axis, (r1_max, 0), to the R2 axis,
// (0, r2_max), so r1 is non-increasing and r2 non-decreasing.
struct PolygonRegion {
  std::vector<RatePoint> vertices;
  std::vector<double> lambdas;

  bool empty() const { return vertices.empty(); }
  // max over the region of lambda*R1 + (1-lambda)*R2.
  double support(double lambda) const;
};

// Intersection of the non-negative quadrant with every supplied half-plane.
// Samples must include lambda = 0 and lambda = 1 so the region is bounded.
PolygonRegion polygon_from_support(std::span<const SupportSample> samples);

// Intersection of two traced regions, keeping the union of their angle grids.
PolygonRegion intersect(const PolygonRegion& a, const PolygonRegion& b);

// Membership in the down-closure of the boundary, with a distance tolerance.
// Throws std::invalid_argument for an empty polygon.
bool polygon_contains(const PolygonRegion& outer, const RatePoint& p, double tol = 1e-9);

// Uniform grid on [0,1] with both endpoints.
std::vector<double> angle_grid(std::size_t num_angles);

}  // namespace bcbounds
