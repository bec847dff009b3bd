#include "vangle/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "vangle/errors.hpp"
#include "vangle/specfun.hpp"

namespace vangle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense seeding resolution and golden-section tolerance for the boundary
// supremum.
constexpr int kSeeds = 720;
constexpr double kGoldenTol = 1e-12;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double angle2(Vec2 p, Vec2 z, Vec2 q) {
  double ux = p.x - z.x, uy = p.y - z.y;
  double wx = q.x - z.x, wy = q.y - z.y;
  const double nu = std::hypot(ux, uy);
  const double nw = std::hypot(wx, wy);
  if (nu == 0.0 || nw == 0.0) return 0.0;
  ux /= nu, uy /= nu, wx /= nw, wy /= nw;
  return 2.0 * std::atan2(std::hypot(ux - wx, uy - wy), std::hypot(ux + wx, uy + wy));
}

template <class F>
double golden_max(F&& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  // Relative to the magnitude of the ends: an absolute 1e-12 is below the
  // double spacing once |s| exceeds about 1e4.
  const double scale = std::max(1.0, std::max(std::abs(a), std::abs(b)));
  for (int it = 0; it < 300 && b - a > tol * scale; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Seeds f on a uniform grid of [lo, hi] (periodic when `periodic`), then
// golden-section refines the strongest discrete local maxima. Returns the
// best parameter.
template <class F>
double seeded_max(F&& f, double lo, double hi, bool periodic) {
  const int n = kSeeds;
  const double step = (hi - lo) / (periodic ? n : n - 1);
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = f(lo + i * step);

  std::vector<int> peaks;
  for (int i = 0; i < n; ++i) {
    const int prev = periodic ? (i + n - 1) % n : std::max(i - 1, 0);
    const int next = periodic ? (i + 1) % n : std::min(i + 1, n - 1);
    const double v = vals[static_cast<std::size_t>(i)];
    if (v >= vals[static_cast<std::size_t>(prev)] && v >= vals[static_cast<std::size_t>(next)]) {
      peaks.push_back(i);
    }
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
    return vals[static_cast<std::size_t>(a)] > vals[static_cast<std::size_t>(b)];
  });
  if (peaks.size() > 4) peaks.resize(4);

  double best_t = lo;
  double best_v = -kInf;
  for (int i : peaks) {
    double a = lo + (i - 1) * step;
    double b = lo + (i + 1) * step;
    if (!periodic) {
      a = std::max(a, lo);
      b = std::min(b, hi);
    }
    const double t = golden_max(f, a, b, kGoldenTol);
    for (double cand : {t, lo + i * step}) {
      const double v = f(cand);
      if (v > best_v) {
        best_v = v;
        best_t = cand;
      }
    }
  }
  return best_t;
}

// Orthonormal vector perpendicular to u (|u| = 1).
Point any_perpendicular(const Point& u) {
  for (int axis = 0; axis < u.dim(); ++axis) {
    Point e = Point::unit(u.dim(), axis);
    Point w = e - dot(e, u) * u;
    const double len = norm(w);
    if (len > 0.5) return w / len;
  }
  return Point::unit(u.dim(), 1);  // unreachable for |u| = 1
}

void require_pair(const Domain& g, const Point& x, const Point& y, const char* what) {
  require_interior(g, x, what);
  require_interior(g, y, what);
}

double one_minus_norm2(const Point& x) {
  const double r = norm(x);
  return (1.0 - r) * (1.0 + r);
}

MetricResult vam_ball(const Point& x, const Point& y) {
  const int n = x.dim();
  const double rx = norm(x);
  const double ry = norm(y);

  if (rx == 0.0 || ry == 0.0) {
    const Point& p = rx == 0.0 ? y : x;
    const double r = std::max(rx, ry);
    const Point u = any_perpendicular(p / r);
    return {std::asin(r), p + std::sqrt(std::max(0.0, 1.0 - r * r)) * u, std::nullopt};
  }

  if (std::abs(rx - ry) <= 1e-15) {
    const double r = 0.5 * (rx + ry);
    const double theta = 0.5 * angle(x, Point::zero(n), y);
    const double value =
        2.0 * std::atan(r * std::sin(theta) / (1.0 - r * std::cos(theta)));
    const Point bis = x + y;
    const double len = norm(bis);
    const Point z = len > 1e-300 ? bis / len : any_perpendicular(x / rx);
    return {value, z, std::nullopt};
  }

  const Point u = x / rx;
  Point w = y - dot(y, u) * u;
  const double wl = norm(w);
  w = wl > 1e-14 * ry ? w / wl : any_perpendicular(u);
  const PlanarMax best = max_angle_on_unit_circle(rx, 0.0, dot(y, u), dot(y, w));
  return {best.angle, best.x * u + best.y * w, std::nullopt};
}

MetricResult vam_half(const Point& x, const Point& y) {
  const int n = x.dim();
  Point horiz = y - x;
  horiz[n - 1] = 0.0;
  const double hl = norm(horiz);
  const Point u = hl > 0.0 ? horiz / hl : Point::unit(n, 0);

  const Vec2 px{0.0, x.last()};
  const Vec2 py{hl, y.last()};
  PlanarMax best = max_angle_on_axis(px.x, px.y, py.x, py.y, -kInf, kInf);

  // Dense seeding over a finite window around the midpoint projection.
  const double chord = std::hypot(py.x - px.x, py.y - px.y);
  const double half_width = 10.0 * (chord + px.y + py.y);
  const double mid = 0.5 * (px.x + py.x);
  const auto f = [&](double s) { return angle2(px, Vec2{s, 0.0}, py); };
  const double s = seeded_max(f, mid - half_width, mid + half_width, false);
  if (f(s) > best.angle) best = {f(s), s, 0.0};

  Point base = x;
  base[n - 1] = 0.0;
  return {best.angle, base + best.x * u, std::nullopt};
}

MetricResult vam_polygon(const ConvexPolygon& poly, const Point& x, const Point& y) {
  PlanarMax best;
  Point witness = poly.vertex(0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly.vertex(i);
    const Point e = poly.vertex(i + 1) - a;
    const double len = norm(e);
    const Point u = e / len;
    const Point nrm{-u[1], u[0]};
    const Point dx = x - a;
    const Point dy = y - a;
    const PlanarMax m =
        max_angle_on_axis(dot(dx, u), dot(dx, nrm), dot(dy, u), dot(dy, nrm), 0.0, len);
    if (m.angle > best.angle) {
      best = m;
      witness = a + m.x * u;
    }
  }
  return {best.angle, witness, std::nullopt};
}

}  // namespace

PlanarMax max_angle_on_axis(double x1, double x2, double y1, double y2, double s_lo,
                            double s_hi) {
  const Vec2 p{x1, x2};
  const Vec2 q{y1, y2};
  const auto f = [&](double s) { return angle2(p, Vec2{s, 0.0}, q); };

  // Circles through p and q tangent to the axis touch it where
  //   (h2 - h1) s^2 - 2 (a h2 - b h1) s + h2 a^2 - h1 b^2 + h1 h2 (h1 - h2) = 0.
  const double a = x1, h1 = x2, b = y1, h2 = y2;
  const double qa = h2 - h1;
  const double qb = -(a * h2 - b * h1);
  const double qc = h2 * a * a - h1 * b * b + h1 * h2 * (h1 - h2);
  std::array<double, 4> cand{};
  int count = 0;
  const double disc = std::sqrt(std::max(0.0, qb * qb - qa * qc));
  const double qq = -(qb + std::copysign(disc, qb));
  if (qq != 0.0) {
    cand[static_cast<std::size_t>(count++)] = qc / qq;
    if (qa != 0.0) cand[static_cast<std::size_t>(count++)] = qq / qa;
  } else if (qa != 0.0) {
    cand[static_cast<std::size_t>(count++)] = -qb / qa;
  }
  if (std::isfinite(s_lo)) cand[static_cast<std::size_t>(count++)] = s_lo;
  if (std::isfinite(s_hi)) cand[static_cast<std::size_t>(count++)] = s_hi;

  PlanarMax best{-1.0, 0.0, 0.0};
  for (int i = 0; i < count; ++i) {
    const double s = std::clamp(cand[static_cast<std::size_t>(i)], s_lo, s_hi);
    if (!std::isfinite(s)) continue;
    const double v = f(s);
    if (v > best.angle) best = {v, s, 0.0};
  }
  if (best.angle < 0.0) best = {f(0.5 * (x1 + y1)), 0.5 * (x1 + y1), 0.0};
  return best;
}

PlanarMax max_angle_on_unit_circle(double x1, double x2, double y1, double y2) {
  const Vec2 p{x1, x2};
  const Vec2 q{y1, y2};
  const auto f = [&](double t) { return angle2(p, Vec2{std::cos(t), std::sin(t)}, q); };

  PlanarMax best{-1.0, 1.0, 0.0};
  const auto consider = [&](double zx, double zy) {
    const double v = angle2(p, Vec2{zx, zy}, q);
    if (v > best.angle) best = {v, zx, zy};
  };

  // Circles through p and q internally tangent to the unit circle: center
  // c = m + lambda n with |c| + |c - p| = 1.
  const double mx = 0.5 * (x1 + y1), my = 0.5 * (x2 + y2);
  const double dx = y1 - x1, dy = y2 - x2;
  const double h = 0.5 * std::hypot(dx, dy);
  if (h > 0.0) {
    const double nx = -dy / (2.0 * h), ny = dx / (2.0 * h);
    const double big_a = 1.0 + h * h - (mx * mx + my * my);
    const double big_b = mx * nx + my * ny;
    const double lead = 1.0 - big_b * big_b;
    const double disc = big_a * big_a - 4.0 * h * h * lead;
    if (lead > 0.0 && disc >= 0.0) {
      const double sq = std::sqrt(disc);
      for (double lambda : {(-big_a * big_b + sq) / (2.0 * lead),
                            (-big_a * big_b - sq) / (2.0 * lead)}) {
        const double cx = mx + lambda * nx, cy = my + lambda * ny;
        const double cl = std::hypot(cx, cy);
        if (cl > 0.0) consider(cx / cl, cy / cl);
      }
    }
  }

  const double t = seeded_max(f, 0.0, 2.0 * kPi, true);
  consider(std::cos(t), std::sin(t));
  return best;
}

double rho_half_sinh(const Domain& g, const Point& x, const Point& y) {
  require_pair(g, x, y, "rho");
  const double d = distance(x, y);
  if (std::holds_alternative<UnitBall>(g)) {
    return d / std::sqrt(one_minus_norm2(x) * one_minus_norm2(y));
  }
  if (std::holds_alternative<HalfSpace>(g)) {
    // cosh rho = 1 + |x-y|^2 / (2 x_n y_n)  <=>  sinh(rho/2) = |x-y| / (2 sqrt(x_n y_n))
    return d / (2.0 * std::sqrt(x.last() * y.last()));
  }
  throw UnsupportedDomainError("rho: hyperbolic metric is defined on ball and half-space only");
}

MetricResult rho(const Domain& g, const Point& x, const Point& y) {
  return {2.0 * std::asinh(rho_half_sinh(g, x, y)), std::nullopt, std::nullopt};
}

MetricResult rho_star(const Domain& g, const Point& x, const Point& y) {
  return {std::atan(rho_half_sinh(g, x, y)), std::nullopt, std::nullopt};
}

MetricResult jmetric(const Domain& g, const Point& x, const Point& y) {
  require_pair(g, x, y, "jmetric");
  if (x == y) return {0.0, std::nullopt, std::nullopt};
  const double m = std::min(boundary_distance(g, x), boundary_distance(g, y));
  return {std::log1p(distance(x, y) / m), std::nullopt, std::nullopt};
}

MetricResult vam(const Domain& g, const Point& x, const Point& y) {
  require_pair(g, x, y, "vam");
  if (x == y) return {0.0, std::nullopt, std::nullopt};
  if (std::holds_alternative<UnitBall>(g)) return vam_ball(x, y);
  if (std::holds_alternative<HalfSpace>(g)) return vam_half(x, y);
  return vam_polygon(std::get<ConvexPolygon>(g), x, y);
}

Enclosure vam_bounds_distance_ratio(const Domain& g, const Point& x, const Point& y) {
  require_pair(g, x, y, "vam_bounds");
  if (x == y) return {0.0, 0.0};
  const double t = distance(x, y) / std::min(boundary_distance(g, x), boundary_distance(g, y));
  return {std::asin(t / (t + 2.0)), 2.0 * std::asin(t / std::sqrt(4.0 + t * t))};
}

Enclosure vam_bounds(const Domain& g, const Point& x, const Point& y) {
  if (std::holds_alternative<ConvexPolygon>(g)) return vam_bounds_distance_ratio(g, x, y);
  const double rs = rho_star(g, x, y).value;
  return {rs, 2.0 * rs};
}

}  // namespace vangle
