#pragma once

// Experiments: metric-sphere tracing, the radial-map distortion ratio and
// linear dilatation estimates for sample maps.

#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vangle/geom.hpp"

namespace vangle {

enum class MetricKind { kV, kRho, kJ, kK };

std::string_view to_string(MetricKind m);
std::optional<MetricKind> metric_from_string(std::string_view name);

/// m_G(x, y) for the chosen metric.
double metric_value(MetricKind m, const Domain& g, const Point& x, const Point& y);

struct BallSample {
  MetricKind metric = MetricKind::kV;
  Domain domain = UnitBall{2};
  Point center;
  double radius = 0.0;
  std::vector<Point> points;
  // Tracing from anything but the origin of a ball relies on star-shapedness
  // that is checked numerically, not known.
  bool exploratory = false;
};

/// Points of the metric sphere S_m(center, radius), one per direction, found
/// by bisection along rays. Throws RangeError when the radius is not reached
/// along some ray, DomainError when the metric is not monotone along the
/// probe rays.
BallSample metric_ball_boundary(const Domain& g, const Point& center, double radius,
                                MetricKind metric, int resolution);

/// Deterministic directions: uniform angles in the plane, a Fibonacci
/// lattice on S^2, seeded Gaussian directions above.
std::vector<Point> sphere_directions(int dim, int count);

/// v(f(x), f(y)) / v(x, y) for the radial map f(z) = z |z|^{a-1} and
/// |x| = |y| = r, angle(x, 0, y) = 2 theta.
double radial_ratio(double a, double r, double theta);

struct RadialMap {
  double a = 0.5;  // in (0, 1]
};
struct IdentityMap {};

struct MapSpec {
  std::variant<MoebiusMap, RadialMap, IdentityMap> map;
  Domain source = UnitBall{2};
};

Point apply_map(const MapSpec& f, const Point& z);

/// max/min of |f(z) - f(x)| over `samples_per_sphere` points with
/// |z - x| = r, for each r in `radii`.
std::vector<double> dilatation_estimate(const MapSpec& f, const Point& x,
                                        const std::vector<double>& radii,
                                        int samples_per_sphere);

struct LipschitzEstimate {
  double constant = 1.0;  // max over pairs of max(ratio, 1/ratio)
  Point x;
  Point y;
};

/// Smallest L with v(x,y)/L <= v'(f(x), f(y)) <= L v(x,y) on the given pairs.
LipschitzEstimate measure_v_lipschitz(const MapSpec& f, const Domain& target,
                                      const std::vector<std::pair<Point, Point>>& pairs);

std::string to_csv(const BallSample& s, int digits = 10);
nlohmann::json to_json(const BallSample& s);

}  // namespace vangle
