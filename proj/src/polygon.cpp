#include "bcbounds/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcbounds {

namespace {

struct Pt {
  double x, y;
};

// Keeps the part of a convex polygon with a*x + b*y <= c.
std::vector<Pt> clip(const std::vector<Pt>& poly, double a, double b, double c) {
  std::vector<Pt> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Pt& p = poly[i];
    const Pt& q = poly[(i + 1) % n];
    const double fp = a * p.x + b * p.y - c;
    const double fq = a * q.x + b * q.y - c;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

// Closed counter-clockwise outline: origin followed by the boundary.
std::vector<Pt> outline(const PolygonRegion& r) {
  std::vector<Pt> pts{{0.0, 0.0}};
  for (const auto& v : r.vertices) pts.push_back({v.r1, v.r2});
  return pts;
}

PolygonRegion boundary_of(const std::vector<Pt>& ccw, std::vector<double> lambdas) {
  PolygonRegion out;
  out.lambdas = std::move(lambdas);
  if (ccw.empty()) {
    out.vertices.push_back({0.0, 0.0, std::nullopt});
    return out;
  }
  // Start at the vertex farthest along the R1 axis, walk counter-clockwise
  // until the R2 axis is reached.
  constexpr double kAxis = 1e-12;
  // Clipping leaves slivers of this size; their edge directions are noise.
  constexpr double kMerge = 1e-12;
  std::size_t start = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    if (ccw[i].y <= kAxis && ccw[i].x > best) {
      best = ccw[i].x;
      start = i;
    }
  }
  const std::size_t n = ccw.size();
  for (std::size_t k = 0; k < n; ++k) {
    Pt p = ccw[(start + k) % n];
    if (p.x < kAxis) p.x = 0.0;
    if (p.y < kAxis) p.y = 0.0;
    if (!out.vertices.empty()) {
      const auto& last = out.vertices.back();
      if (std::abs(last.r1 - p.x) < kMerge && std::abs(last.r2 - p.y) < kMerge) continue;
    }
    out.vertices.push_back({p.x, p.y, std::nullopt});
    if (p.x == 0.0) break;
  }
  return out;
}

}  // namespace

double PolygonRegion::support(double lambda) const {
  double best = 0.0;
  for (const auto& v : vertices) best = std::max(best, lambda * v.r1 + (1.0 - lambda) * v.r2);
  return best;
}

PolygonRegion polygon_from_support(std::span<const SupportSample> samples) {
  double r1_cap = -1.0, r2_cap = -1.0;
  for (const auto& s : samples) {
    if (s.lambda == 1.0) r1_cap = std::max(0.0, s.value);
    if (s.lambda == 0.0) r2_cap = std::max(0.0, s.value);
  }
  if (r1_cap < 0.0 || r2_cap < 0.0) {
    throw std::invalid_argument("support samples must include lambda = 0 and lambda = 1");
  }
  std::vector<Pt> poly{{0.0, 0.0}, {r1_cap, 0.0}, {r1_cap, r2_cap}, {0.0, r2_cap}};
  std::vector<double> lambdas;
  for (const auto& s : samples) {
    poly = clip(poly, s.lambda, 1.0 - s.lambda, std::max(0.0, s.value));
    lambdas.push_back(s.lambda);
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  return boundary_of(poly, std::move(lambdas));
}

PolygonRegion intersect(const PolygonRegion& a, const PolygonRegion& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("cannot intersect an empty polygon");
  auto poly = outline(a);
  const auto edges = outline(b);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Pt& p = edges[i];
    const Pt& q = edges[(i + 1) % edges.size()];
    const double dx = q.x - p.x, dy = q.y - p.y;
    if (dx == 0.0 && dy == 0.0) continue;
    // Outward normal of a counter-clockwise edge.
    poly = clip(poly, dy, -dx, dy * p.x - dx * p.y);
  }
  std::vector<double> lambdas = a.lambdas;
  lambdas.insert(lambdas.end(), b.lambdas.begin(), b.lambdas.end());
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  return boundary_of(poly, std::move(lambdas));
}

bool polygon_contains(const PolygonRegion& outer, const RatePoint& p, double tol) {
  if (outer.empty()) throw std::invalid_argument("polygon has no vertices");
  if (p.r1 < -tol || p.r2 < -tol) return false;
  double r1_cap = 0.0, r2_cap = 0.0;
  for (const auto& v : outer.vertices) {
    r1_cap = std::max(r1_cap, v.r1);
    r2_cap = std::max(r2_cap, v.r2);
  }
  if (p.r1 > r1_cap + tol || p.r2 > r2_cap + tol) return false;
  const auto pts = outline(outer);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Pt& a = pts[i];
    const Pt& b = pts[(i + 1) % pts.size()];
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len = std::hypot(dx, dy);
    if (len < 1e-12) continue;
    const double dist = (dy * (p.r1 - a.x) - dx * (p.r2 - a.y)) / len;
    if (dist > tol) return false;
  }
  return true;
}

std::vector<double> angle_grid(std::size_t num_angles) {
  if (num_angles < 2) throw std::invalid_argument("angle grid needs at least two angles");
  std::vector<double> out(num_angles);
  for (std::size_t k = 0; k < num_angles; ++k)
    out[k] = static_cast<double>(k) / static_cast<double>(num_angles - 1);
  out.back() = 1.0;
  return out;
}

}  // namespace bcbounds
