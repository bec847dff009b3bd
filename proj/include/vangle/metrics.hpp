#pragma once

// The visual angle metric v, the hyperbolic metric rho (and rho*), the
// distance ratio metric j, and an upper-bound solver for the
// quasihyperbolic metric k.

#include <optional>
#include <utility>
#include <vector>

#include "vangle/geom.hpp"

namespace vangle {

struct Enclosure {
  double lower = 0.0;
  double upper = 0.0;
};

struct MetricResult {
  double value = 0.0;
  std::optional<Point> witness;
  std::optional<Enclosure> enclosure;
};

struct QhSolverParams {
  int node_count = 64;
  int max_iters = 2000;
  double step_tolerance = 1e-10;
};

/// Hyperbolic metric on the unit ball or the upper half-space.
MetricResult rho(const Domain& g, const Point& x, const Point& y);

/// sinh(rho/2), computed directly from the closed forms.
double rho_half_sinh(const Domain& g, const Point& x, const Point& y);

/// arctan(sinh(rho/2)).
MetricResult rho_star(const Domain& g, const Point& x, const Point& y);

/// Distance ratio metric log(1 + |x-y| / min{d(x), d(y)}).
MetricResult jmetric(const Domain& g, const Point& x, const Point& y);

/// Visual angle metric: supremum of angle(x, z, y) over boundary points z,
/// with the maximizing z as witness.
MetricResult vam(const Domain& g, const Point& x, const Point& y);

/// Lower and upper bounds on v: (rho*, 2 rho*) on the ball and half-space,
/// the distance-ratio bounds on polygons.
Enclosure vam_bounds(const Domain& g, const Point& x, const Point& y);

/// arcsin(t/(t+2)) <= v <= 2 arcsin(t/sqrt(4+t^2)), t = e^j - 1. Valid on
/// every convex domain.
Enclosure vam_bounds_distance_ratio(const Domain& g, const Point& x, const Point& y);

/// Quasihyperbolic length of an optimized polyline joining x and y. The
/// enclosure is (j, value), tightened by rho/2 <= k <= rho in the ball.
/// Throws ConvergenceError carrying the best value when max_iters is hit.
MetricResult qh_distance(const Domain& g, const Point& x, const Point& y,
                         const QhSolverParams& params = {});

struct QhPath {
  std::vector<Point> nodes;  // x, interior nodes, y
  double length = 0.0;       // quasihyperbolic length of the polyline
  int iterations = 0;
  bool converged = false;
};

/// The optimized polyline itself; never throws on non-convergence.
QhPath qh_path(const Domain& g, const Point& x, const Point& y,
               const QhSolverParams& params = {});

/// Quasihyperbolic length of a given polyline (Gauss-Legendre per segment).
double qh_polyline_length(const Domain& g, const std::vector<Point>& nodes);

/// Supremum of the visual angle over a circle boundary in a plane, used by
/// the ball reduction. Exposed for testing. Coordinates are planar (2-D).
struct PlanarMax {
  double angle = 0.0;
  double x = 0.0;
  double y = 0.0;
};
PlanarMax max_angle_on_unit_circle(double x1, double x2, double y1, double y2);
/// Same for the segment s in [s_lo, s_hi] of the horizontal axis, points
/// strictly above it. Infinite bounds describe the whole line.
PlanarMax max_angle_on_axis(double x1, double x2, double y1, double y2, double s_lo,
                            double s_hi);

}  // namespace vangle
