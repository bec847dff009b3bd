#pragma once

// Points, domains and the Moebius toolkit.

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vangle {

/// A point of R^n, n >= 2.
class Point {
 public:
  Point() = default;
  /// Validates n >= 2 and finite coordinates.
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zero(int dim);
  static Point unit(int dim, int axis);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return coords_; }
  double last() const { return coords_.back(); }

  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  Point& operator*=(double s);

  friend bool operator==(const Point&, const Point&) = default;

 private:
  struct Unchecked {};
  Point(std::vector<double> coords, Unchecked) : coords_(std::move(coords)) {}
  friend Point operator+(const Point&, const Point&);
  friend Point operator-(const Point&, const Point&);
  friend Point operator*(double, const Point&);
  friend Point operator-(const Point&);

  std::vector<double> coords_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& a);
inline Point operator*(const Point& a, double s) { return s * a; }
inline Point operator/(const Point& a, double s) { return (1.0 / s) * a; }
Point operator-(const Point& a);

double dot(const Point& a, const Point& b);
double norm2(const Point& a);
double norm(const Point& a);
double distance(const Point& a, const Point& b);
std::string to_string(const Point& p, int digits = 10);

/// The angle at z in the triangle (x, z, y), in [0, pi].
double angle(const Point& x, const Point& z, const Point& y);

struct UnitBall {
  int dim = 2;
};

/// Upper half-space {x : x_n > 0}.
struct HalfSpace {
  int dim = 2;
};

/// Strictly convex planar polygon, vertices in counterclockwise order.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

 private:
  std::vector<Point> vertices_;
};

using Domain = std::variant<UnitBall, HalfSpace, ConvexPolygon>;

int dimension(const Domain& g);
/// "ball:<n>", "half:<n>" or "poly:x1,y1;x2,y2;..."; parse_domain inverts it.
std::string describe(const Domain& g);
Domain parse_domain(std::string_view spec);

/// Comma-separated coordinates. Throws UsageError on malformed input.
Point parse_point(std::string_view text);

/// Euclidean distance from x to the boundary of g.
double boundary_distance(const Domain& g, const Point& x);

/// Gradient of boundary_distance at an interior point (zero where undefined).
Point boundary_distance_gradient(const Domain& g, const Point& x);

/// Strict interior membership.
bool contains(const Domain& g, const Point& x);

/// Throws DomainError unless x is an interior point of g.
void require_interior(const Domain& g, const Point& x, const char* what);

/// Closest boundary point to x.
Point nearest_boundary_point(const Domain& g, const Point& x);

// ---------------------------------------------------------------------------
// Moebius maps

struct SphereInversion {
  Point center;
  double radius = 1.0;
};

/// Reflection in the hyperplane {z : z . normal = offset}.
struct Reflection {
  Point normal;
  double offset = 0.0;
};

/// The ball automorphism T_a = p_a o sigma_a with T_a(a) = 0.
struct BallAutomorphism {
  Point a;
};

/// z -> -e_n + 2 (z + e_n) / |z + e_n|^2: unit ball onto the upper
/// half-space. The map is an involution, so it is also its own inverse.
struct BallToHalf {
  int dim = 2;
};

struct MoebiusMap;

/// Applied left to right: maps.front() first.
struct Composition {
  std::vector<MoebiusMap> maps;
};

struct MoebiusMap {
  std::variant<SphereInversion, Reflection, BallAutomorphism, BallToHalf, Composition> v;
};

MoebiusMap sphere_inversion(Point center, double radius);
MoebiusMap reflection(Point normal, double offset);
MoebiusMap ball_automorphism(Point a);
MoebiusMap ball_half_map(int dim);
MoebiusMap compose(std::vector<MoebiusMap> maps);

MoebiusMap inverse(const MoebiusMap& m);

/// Image of z. Throws PoleError at the pole of an inversion.
Point apply_moebius(const MoebiusMap& m, const Point& z);

}  // namespace vangle
