#include "vangle/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace vangle {
namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; strictly convex output.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::string_view stream) {
  // FNV-1a of the label, mixed into the seed sequence.
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : stream) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return Rng(seq);
}

Point random_unit_vector(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (double& v : c) v = normal(rng);
    Point p(std::move(c));
    const double len = norm(p);
    if (len > 1e-8) return p / len;
  }
}

Point random_point(const Domain& g, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = dimension(g);
  if (std::holds_alternative<UnitBall>(g)) {
    for (;;) {
      std::vector<double> c(static_cast<std::size_t>(n));
      for (double& v : c) v = 2.0 * unit(rng) - 1.0;
      Point p(std::move(c));
      if (norm(p) < 1.0) return p;
    }
  }
  if (std::holds_alternative<HalfSpace>(g)) {
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int i = 0; i + 1 < n; ++i) c[static_cast<std::size_t>(i)] = 4.0 * unit(rng) - 2.0;
    c.back() = std::pow(10.0, -3.0 + 4.0 * unit(rng));
    return Point(std::move(c));
  }
  const auto& poly = std::get<ConvexPolygon>(g);
  double lo[2] = {poly.vertex(0)[0], poly.vertex(0)[1]};
  double hi[2] = {lo[0], lo[1]};
  for (const Point& v : poly.vertices()) {
    for (int i = 0; i < 2; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  for (;;) {
    Point p{lo[0] + (hi[0] - lo[0]) * unit(rng), lo[1] + (hi[1] - lo[1]) * unit(rng)};
    if (contains(g, p)) return p;
  }
}

Point random_boundary_layer_point(const Domain& g, Rng& rng) {
  if (!std::holds_alternative<UnitBall>(g)) return random_point(g, rng);
  std::uniform_real_distribution<double> u(1.0, 6.0);
  const double r = 1.0 - std::pow(10.0, -u(rng));
  return r * random_unit_vector(dimension(g), rng);
}

std::pair<Point, Point> random_pair(const Domain& g, Rng& rng, double min_separation) {
  std::uniform_int_distribution<int> quarter(0, 3);
  for (;;) {
    const bool layer = quarter(rng) == 0;
    Point x = layer ? random_boundary_layer_point(g, rng) : random_point(g, rng);
    Point y = random_point(g, rng);
    if (distance(x, y) >= min_separation) return {std::move(x), std::move(y)};
  }
}

ConvexPolygon random_convex_polygon(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    std::vector<Point> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(Point{unit(rng), unit(rng)});
    std::vector<Point> hull = convex_hull(std::move(pts));
    if (hull.size() >= 3) return ConvexPolygon(std::move(hull));
  }
}

}  // namespace vangle
