#pragma once

// Deterministic random inputs for property checks: points and pairs in a
// domain, boundary-layer points, and random convex polygons.

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "vangle/geom.hpp"

namespace vangle {

using Rng = std::mt19937_64;

/// A generator seeded from a base seed and a stream label, so independent
/// checks draw independent, reproducible streams.
Rng make_rng(std::uint64_t seed, std::string_view stream);

/// Uniform direction on the unit sphere of R^n.
Point random_unit_vector(int n, Rng& rng);

/// Interior point. Ball: uniform in volume. Half-space: horizontal part
/// uniform in [-2, 2]^{n-1}, height log-uniform in [1e-3, 10]. Polygon:
/// rejection sampling from the bounding box.
Point random_point(const Domain& g, Rng& rng);

/// Interior point close to the boundary: ball radius 1 - 10^{-u}, u uniform
/// in [1, 6]; other domains fall back to random_point.
Point random_boundary_layer_point(const Domain& g, Rng& rng);

/// Distinct pair with |x - y| >= min_separation. Every fourth pair has one
/// point in the boundary layer.
std::pair<Point, Point> random_pair(const Domain& g, Rng& rng, double min_separation = 1e-6);

/// Convex hull of 12 uniform points in the unit square (at least 3
/// vertices, counterclockwise, collinear points dropped).
ConvexPolygon random_convex_polygon(Rng& rng);

}  // namespace vangle
