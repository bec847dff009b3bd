#include "vangle/geom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "vangle/errors.hpp"

namespace vangle {
namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw UsageError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
  }
}

double cross2(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }

// Closest point to p on the segment [a, b].
Point closest_on_segment(const Point& a, const Point& b, const Point& p) {
  const Point ab = b - a;
  const double len2 = norm2(ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

Point closest_on_polygon(const ConvexPolygon& poly, const Point& x) {
  Point best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Point c = closest_on_segment(poly.vertex(i), poly.vertex(i + 1), x);
    const double d2 = norm2(c - x);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = std::move(c);
    }
  }
  return best;
}

void require_domain_dim(const Domain& g, const Point& x) {
  if (dimension(g) != x.dim()) {
    throw UsageError("point of dimension " + std::to_string(x.dim()) +
                     " used with domain " + describe(g));
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) throw UsageError("Point: dimension must be at least 2");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw DomainError("Point: coordinates must be finite");
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point Point::zero(int dim) {
  if (dim < 2) throw UsageError("Point: dimension must be at least 2");
  return Point(std::vector<double>(static_cast<std::size_t>(dim), 0.0), Unchecked{});
}

Point Point::unit(int dim, int axis) {
  Point p = zero(dim);
  if (axis < 0 || axis >= dim) throw UsageError("Point::unit: axis out of range");
  p[axis] = 1.0;
  return p;
}

Point& Point::operator+=(const Point& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

Point operator+(const Point& a, const Point& b) {
  Point out(a.coords_, Point::Unchecked{});
  out += b;
  return out;
}

Point operator-(const Point& a, const Point& b) {
  Point out(a.coords_, Point::Unchecked{});
  out -= b;
  return out;
}

Point operator*(double s, const Point& a) {
  Point out(a.coords_, Point::Unchecked{});
  out *= s;
  return out;
}

Point operator-(const Point& a) { return -1.0 * a; }

double dot(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Point& a) { return dot(a, a); }

double norm(const Point& a) {
  double s = 0.0;
  for (double c : a.coords()) s = std::hypot(s, c);
  return s;
}

double distance(const Point& a, const Point& b) { return norm(a - b); }

std::string to_string(const Point& p, int digits) {
  std::string out;
  char buf[64];
  for (int i = 0; i < p.dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, p[i]);
    if (i > 0) out += ',';
    out += buf;
  }
  return out;
}

double angle(const Point& x, const Point& z, const Point& y) {
  const Point u = x - z;
  const Point w = y - z;
  const double nu = norm(u);
  const double nw = norm(w);
  if (nu == 0.0 || nw == 0.0) {
    throw DegenerateInputError("angle: vertex coincides with an endpoint");
  }
  // 2 atan2(|u^ - w^|, |u^ + w^|) stays accurate near 0 and pi.
  const Point uh = u / nu;
  const Point wh = w / nw;
  return 2.0 * std::atan2(norm(uh - wh), norm(uh + wh));
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw UsageError("ConvexPolygon: need at least 3 vertices");
  for (const Point& v : vertices_) {
    if (v.dim() != 2) throw UsageError("ConvexPolygon: vertices must be 2-D");
  }
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e1 = vertex(i + 1) - vertex(i);
    const Point e2 = vertex(i + 2) - vertex(i + 1);
    if (norm2(e1) == 0.0) throw UsageError("ConvexPolygon: repeated vertex");
    const double c = cross2(e1, e2);
    if (!(c > 0.0)) {
      throw UsageError(
          "ConvexPolygon: vertices must be strictly convex and counterclockwise");
    }
    turning += std::atan2(c, dot(e1, e2));
  }
  // A star polygon also turns left at every vertex but winds more than once.
  if (std::abs(turning - 2.0 * 3.14159265358979323846) > 1e-6) {
    throw UsageError("ConvexPolygon: vertex order winds more than once");
  }
}

int dimension(const Domain& g) {
  if (const auto* b = std::get_if<UnitBall>(&g)) return b->dim;
  if (const auto* h = std::get_if<HalfSpace>(&g)) return h->dim;
  return 2;
}

std::string describe(const Domain& g) {
  if (const auto* b = std::get_if<UnitBall>(&g)) return "ball:" + std::to_string(b->dim);
  if (const auto* h = std::get_if<HalfSpace>(&g)) return "half:" + std::to_string(h->dim);
  const auto& poly = std::get<ConvexPolygon>(g);
  std::string out = "poly:";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i > 0) out += ';';
    out += to_string(poly.vertex(i));
  }
  return out;
}

Point parse_point(std::string_view text) {
  std::vector<double> coords;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = text.find(',', pos);
    const std::string field(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size() || !std::isfinite(v)) {
      throw UsageError("malformed point '" + std::string(text) + "'");
    }
    coords.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (coords.size() < 2) throw UsageError("point '" + std::string(text) + "' needs n >= 2");
  return Point(std::move(coords));
}

Domain parse_domain(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("malformed domain '" + std::string(spec) +
                     "' (expected ball:<n>, half:<n> or poly:x1,y1;x2,y2;...)");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string rest(spec.substr(colon + 1));
  if (kind == "ball" || kind == "half") {
    char* end = nullptr;
    const long n = std::strtol(rest.c_str(), &end, 10);
    if (rest.empty() || end != rest.c_str() + rest.size() || n < 2 || n > 64) {
      throw UsageError("malformed dimension in domain '" + std::string(spec) + "'");
    }
    if (kind == "ball") return UnitBall{static_cast<int>(n)};
    return HalfSpace{static_cast<int>(n)};
  }
  if (kind == "poly") {
    std::vector<Point> vertices;
    std::size_t pos = 0;
    const std::string_view body(rest);
    for (;;) {
      const std::size_t semi = body.find(';', pos);
      vertices.push_back(parse_point(body.substr(pos, semi == std::string_view::npos ? semi : semi - pos)));
      if (semi == std::string_view::npos) break;
      pos = semi + 1;
    }
    return ConvexPolygon(std::move(vertices));
  }
  throw UsageError("unknown domain kind '" + std::string(kind) + "'");
}

double boundary_distance(const Domain& g, const Point& x) {
  require_domain_dim(g, x);
  if (std::holds_alternative<UnitBall>(g)) return std::abs(1.0 - norm(x));
  if (std::holds_alternative<HalfSpace>(g)) return std::abs(x.last());
  return distance(x, closest_on_polygon(std::get<ConvexPolygon>(g), x));
}

Point boundary_distance_gradient(const Domain& g, const Point& x) {
  require_domain_dim(g, x);
  if (std::holds_alternative<UnitBall>(g)) {
    const double r = norm(x);
    if (r == 0.0) return Point::zero(x.dim());
    return -x / r;
  }
  if (std::holds_alternative<HalfSpace>(g)) return Point::unit(x.dim(), x.dim() - 1);
  const Point c = closest_on_polygon(std::get<ConvexPolygon>(g), x);
  const Point d = x - c;
  const double len = norm(d);
  if (len == 0.0) return Point::zero(2);
  return d / len;
}

bool contains(const Domain& g, const Point& x) {
  require_domain_dim(g, x);
  if (std::holds_alternative<UnitBall>(g)) return norm(x) < 1.0;
  if (std::holds_alternative<HalfSpace>(g)) return x.last() > 0.0;
  const auto& poly = std::get<ConvexPolygon>(g);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (!(cross2(poly.vertex(i + 1) - poly.vertex(i), x - poly.vertex(i)) > 0.0)) {
      return false;
    }
  }
  return true;
}

void require_interior(const Domain& g, const Point& x, const char* what) {
  if (!contains(g, x)) {
    throw DomainError(std::string(what) + ": point (" + to_string(x) +
                      ") is not interior to " + describe(g));
  }
}

Point nearest_boundary_point(const Domain& g, const Point& x) {
  require_domain_dim(g, x);
  if (std::holds_alternative<UnitBall>(g)) {
    const double r = norm(x);
    if (r == 0.0) return Point::unit(x.dim(), 0);
    return x / r;
  }
  if (std::holds_alternative<HalfSpace>(g)) {
    Point p = x;
    p[p.dim() - 1] = 0.0;
    return p;
  }
  return closest_on_polygon(std::get<ConvexPolygon>(g), x);
}

// ---------------------------------------------------------------------------

MoebiusMap sphere_inversion(Point center, double radius) {
  if (!(radius > 0.0)) throw DomainError("sphere_inversion: radius must be positive");
  return {SphereInversion{std::move(center), radius}};
}

MoebiusMap reflection(Point normal, double offset) {
  if (norm2(normal) == 0.0) throw DomainError("reflection: normal must be non-zero");
  return {Reflection{std::move(normal), offset}};
}

MoebiusMap ball_automorphism(Point a) {
  if (!(norm(a) < 1.0)) throw DomainError("ball_automorphism: |a| must be < 1");
  return {BallAutomorphism{std::move(a)}};
}

MoebiusMap ball_half_map(int dim) {
  if (dim < 2) throw UsageError("ball_half_map: dimension must be at least 2");
  return {BallToHalf{dim}};
}

MoebiusMap compose(std::vector<MoebiusMap> maps) { return {Composition{std::move(maps)}}; }

MoebiusMap inverse(const MoebiusMap& m) {
  if (const auto* t = std::get_if<BallAutomorphism>(&m.v)) return {BallAutomorphism{-t->a}};
  if (const auto* c = std::get_if<Composition>(&m.v)) {
    std::vector<MoebiusMap> inv;
    inv.reserve(c->maps.size());
    for (auto it = c->maps.rbegin(); it != c->maps.rend(); ++it) inv.push_back(inverse(*it));
    return {Composition{std::move(inv)}};
  }
  // Inversions, reflections and the ball/half-space inversion are involutions.
  return m;
}

namespace {

Point invert(const Point& center, double radius2, const Point& z) {
  const Point w = z - center;
  const double n2 = norm2(w);
  if (n2 == 0.0) throw PoleError("Moebius map evaluated at its pole");
  Point out = center + (radius2 / n2) * w;
  for (double c : out.coords()) {
    if (!std::isfinite(c)) throw PoleError("Moebius map evaluated at its pole");
  }
  return out;
}

Point reflect(const Point& normal, double offset, const Point& z) {
  return z - (2.0 * (dot(z, normal) - offset) / norm2(normal)) * normal;
}

}  // namespace

Point apply_moebius(const MoebiusMap& m, const Point& z) {
  return std::visit(
      [&](const auto& map) -> Point {
        using T = std::decay_t<decltype(map)>;
        if constexpr (std::is_same_v<T, SphereInversion>) {
          require_same_dim(map.center, z);
          return invert(map.center, map.radius * map.radius, z);
        } else if constexpr (std::is_same_v<T, Reflection>) {
          require_same_dim(map.normal, z);
          return reflect(map.normal, map.offset, z);
        } else if constexpr (std::is_same_v<T, BallAutomorphism>) {
          require_same_dim(map.a, z);
          const double a2 = norm2(map.a);
          if (a2 == 0.0) return z;
          const Point a_star = map.a / a2;
          const Point sigma = invert(a_star, 1.0 / a2 - 1.0, z);
          return reflect(map.a, 0.0, sigma);
        } else if constexpr (std::is_same_v<T, BallToHalf>) {
          if (z.dim() != map.dim) throw UsageError("ball_half_map: dimension mismatch");
          return invert(-Point::unit(map.dim, map.dim - 1), 2.0, z);
        } else {
          Point out = z;
          for (const MoebiusMap& inner : map.maps) out = apply_moebius(inner, out);
          return out;
        }
      },
      m.v);
}

}  // namespace vangle
