#include "vangle/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "vangle/errors.hpp"
#include "vangle/metrics.hpp"
#include "vangle/sampling.hpp"
#include "vangle/specfun.hpp"

namespace vangle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kProbeRays = 32;
constexpr int kProbeSteps = 100;

// Distance from c (interior) to the boundary along the unit direction u.
double ray_exit(const Domain& g, const Point& c, const Point& u) {
  if (std::holds_alternative<UnitBall>(g)) {
    const double b = dot(c, u);
    const double r = norm(c);
    return -b + std::sqrt(b * b + (1.0 - r) * (1.0 + r));
  }
  if (std::holds_alternative<HalfSpace>(g)) {
    return u.last() < 0.0 ? c.last() / -u.last() : kInf;
  }
  const auto& poly = std::get<ConvexPolygon>(g);
  double best = kInf;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly.vertex(i);
    const Point e = poly.vertex(i + 1) - a;
    const Point n = Point{-e[1], e[0]} / norm(e);
    const double rate = dot(n, u);
    if (rate < 0.0) best = std::min(best, dot(c - a, n) / -rate);
  }
  return best;
}

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",;\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Probe parameters along a ray: uniform up to the exit for bounded rays,
// geometric in units of d(center) otherwise.
double probe_t(double t_exit, double scale, int k) {
  if (std::isfinite(t_exit)) return t_exit * k / (kProbeSteps + 1.0);
  return scale * std::expm1(0.1 * k);
}

}  // namespace

std::string_view to_string(MetricKind m) {
  switch (m) {
    case MetricKind::kV:
      return "v";
    case MetricKind::kRho:
      return "rho";
    case MetricKind::kJ:
      return "j";
    case MetricKind::kK:
      return "k";
  }
  return "v";
}

std::optional<MetricKind> metric_from_string(std::string_view name) {
  for (MetricKind m : {MetricKind::kV, MetricKind::kRho, MetricKind::kJ, MetricKind::kK}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double metric_value(MetricKind m, const Domain& g, const Point& x, const Point& y) {
  switch (m) {
    case MetricKind::kV:
      return vam(g, x, y).value;
    case MetricKind::kRho:
      return rho(g, x, y).value;
    case MetricKind::kJ:
      return jmetric(g, x, y).value;
    case MetricKind::kK:
      return qh_distance(g, x, y).value;
  }
  return 0.0;
}

std::vector<Point> sphere_directions(int dim, int count) {
  if (dim < 2) throw UsageError("sphere_directions: dimension must be at least 2");
  if (count < 1) throw UsageError("sphere_directions: count must be positive");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double t = 2.0 * kPi * i / count;
      out.push_back(Point{std::cos(t), std::sin(t)});
    }
  } else if (dim == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      out.push_back(Point{r * std::cos(golden * i), r * std::sin(golden * i), z});
    }
  } else {
    Rng rng = make_rng(0, "sphere_directions");
    for (int i = 0; i < count; ++i) out.push_back(random_unit_vector(dim, rng));
  }
  return out;
}

BallSample metric_ball_boundary(const Domain& g, const Point& center, double radius,
                                MetricKind metric, int resolution) {
  require_interior(g, center, "metric_ball_boundary");
  if (resolution < 1) throw UsageError("metric_ball_boundary: resolution must be positive");
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw RangeError("metric_ball_boundary: radius must be finite and non-negative");
  }
  const int n = center.dim();
  BallSample out{metric, g, center, radius, {}, true};
  out.exploratory = !(std::holds_alternative<UnitBall>(g) && norm(center) == 0.0);
  if (radius == 0.0) {
    out.points.push_back(center);
    return out;
  }

  const double scale = boundary_distance(g, center);
  const auto along = [&](const Point& u, double t) {
    return metric_value(metric, g, center, center + t * u);
  };

  for (const Point& u : sphere_directions(n, kProbeRays)) {
    const double t_exit = ray_exit(g, center, u);
    double prev = 0.0;
    for (int k = 1; k <= kProbeSteps; ++k) {
      const double value = along(u, probe_t(t_exit, scale, k));
      if (value < prev - 1e-12 * (1.0 + std::abs(prev))) {
        throw DomainError("metric_ball_boundary: metric " + std::string(to_string(metric)) +
                          " is not monotone along the ray from (" + to_string(center) +
                          ") in direction (" + to_string(u) + ")");
      }
      prev = value;
    }
  }

  for (const Point& u : sphere_directions(n, resolution)) {
    const double t_exit = ray_exit(g, center, u);
    double hi = 0.0;
    if (std::isfinite(t_exit)) {
      hi = t_exit * (1.0 - 1e-12);
      if (along(u, hi) < radius) {
        throw RangeError("metric_ball_boundary: radius " + format_double(radius, 10) +
                         " is not attained in direction (" + to_string(u) + ")");
      }
    } else {
      hi = scale;
      while (along(u, hi) < radius) {
        hi *= 2.0;
        if (hi > 1e12 * scale) {
          throw RangeError("metric_ball_boundary: radius " + format_double(radius, 10) +
                           " is not attained in direction (" + to_string(u) + ")");
        }
      }
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi;
         ++it) {
      const double mid = 0.5 * (lo + hi);
      (along(u, mid) < radius ? lo : hi) = mid;
    }
    out.points.push_back(center + (0.5 * (lo + hi)) * u);
  }
  return out;
}

double radial_ratio(double a, double r, double theta) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("radial_ratio: a must lie in (0, 1]");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("radial_ratio: r must lie in (0, 1)");
  if (!(theta > 0.0 && theta <= kHalfPi)) {
    throw DomainError("radial_ratio: theta must lie in (0, pi/2]");
  }
  const auto v = [theta](double t) {
    return 2.0 * std::atan(t * std::sin(theta) / (1.0 - t * std::cos(theta)));
  };
  return v(std::pow(r, a)) / v(r);
}

Point apply_map(const MapSpec& f, const Point& z) {
  if (const auto* m = std::get_if<MoebiusMap>(&f.map)) return apply_moebius(*m, z);
  if (const auto* radial = std::get_if<RadialMap>(&f.map)) {
    const double r = norm(z);
    if (r == 0.0) return z;
    return std::pow(r, radial->a - 1.0) * z;
  }
  return z;
}

std::vector<double> dilatation_estimate(const MapSpec& f, const Point& x,
                                        const std::vector<double>& radii,
                                        int samples_per_sphere) {
  require_interior(f.source, x, "dilatation_estimate");
  if (samples_per_sphere < 2) {
    throw UsageError("dilatation_estimate: need at least 2 samples per sphere");
  }
  const double d = boundary_distance(f.source, x);
  const Point fx = apply_map(f, x);
  const std::vector<Point> dirs = sphere_directions(x.dim(), samples_per_sphere);
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (!(r > 0.0 && r < d)) {
      throw RangeError("dilatation_estimate: radius " + format_double(r, 10) +
                       " must lie in (0, d(x)) = (0, " + format_double(d, 10) + ")");
    }
    double big = 0.0;
    double small = kInf;
    for (const Point& u : dirs) {
      const double len = distance(apply_map(f, x + r * u), fx);
      big = std::max(big, len);
      small = std::min(small, len);
    }
    out.push_back(big / small);
  }
  return out;
}

LipschitzEstimate measure_v_lipschitz(const MapSpec& f, const Domain& target,
                                      const std::vector<std::pair<Point, Point>>& pairs) {
  LipschitzEstimate best;
  for (const auto& [x, y] : pairs) {
    const double before = vam(f.source, x, y).value;
    const double after = vam(target, apply_map(f, x), apply_map(f, y)).value;
    if (before == 0.0 || after == 0.0) continue;
    const double l = std::max(after / before, before / after);
    if (l > best.constant) best = {l, x, y};
  }
  return best;
}

std::string to_csv(const BallSample& s, int digits) {
  std::ostringstream os;
  os << "# metric=" << to_string(s.metric) << '\n';
  os << "# domain=" << describe(s.domain) << '\n';
  os << "# center=" << to_string(s.center, digits) << '\n';
  os << "# radius=" << format_double(s.radius, digits) << '\n';
  os << "# points=" << s.points.size() << '\n';
  os << "# exploratory=" << (s.exploratory ? "true" : "false") << '\n';
  const int n = s.center.dim();
  os << "metric,domain";
  for (int i = 1; i <= n; ++i) os << ",c" << i;
  os << ",radius";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  os << '\n';
  const std::string prefix = std::string(to_string(s.metric)) + "," +
                             csv_field(describe(s.domain)) + "," +
                             to_string(s.center, digits) + "," + format_double(s.radius, digits);
  for (const Point& p : s.points) os << prefix << ',' << to_string(p, digits) << '\n';
  return os.str();
}

nlohmann::json to_json(const BallSample& s) {
  nlohmann::json points = nlohmann::json::array();
  for (const Point& p : s.points) {
    points.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
  }
  return {{"metric", std::string(to_string(s.metric))},
          {"domain", describe(s.domain)},
          {"center", std::vector<double>(s.center.coords().begin(), s.center.coords().end())},
          {"radius", s.radius},
          {"exploratory", s.exploratory},
          {"points", points}};
}

}  // namespace vangle
