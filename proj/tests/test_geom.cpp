#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vangle/errors.hpp"
#include "vangle/geom.hpp"
#include "vangle/metrics.hpp"
#include "vangle/sampling.hpp"

using namespace vangle;
using doctest::Approx;

namespace {

std::vector<double> raw(const Point& p) { return {p.coords().begin(), p.coords().end()}; }

const ConvexPolygon kSquare{{Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}}};

}  // namespace

TEST_CASE("point construction") {
  CHECK_THROWS(Point{1.0});
  CHECK_THROWS(Point{1.0, NAN});
  CHECK_THROWS(Point{INFINITY, 0.0});
  CHECK(Point::unit(3, 2) == Point{0, 0, 1});
  CHECK(distance(Point{0, 0}, Point{3, 4}) == 5.0);
}

TEST_CASE("angle") {
  CHECK(angle(Point{1, 0}, Point{0, 0}, Point{0, 1}) == Approx(oracle::kPi / 2).epsilon(1e-15));
  CHECK(angle(Point{-1, 0}, Point{0.25, 0}, Point{2, 0}) == Approx(oracle::kPi));
  CHECK(angle(Point{1, 0}, Point{-1, 0}, Point{3, 0}) == 0.0);
  CHECK_THROWS_AS(angle(Point{1, 0}, Point{1, 0}, Point{0, 1}), DegenerateInputError);
  CHECK_THROWS_AS(angle(Point{1, 0}, Point{0, 1}, Point{0, 1}), DegenerateInputError);
}

TEST_CASE("angle is symmetric and similarity invariant") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Point x{n(rng), n(rng)}, z{n(rng), n(rng)}, y{n(rng), n(rng)};
    const double a = angle(x, z, y);
    CHECK(std::abs(a - angle(y, z, x)) <= 1e-12);
    CHECK(std::abs(a - oracle::angle(raw(x), raw(z), raw(y))) <= 1e-7);
    const double t = n(rng), s = std::exp(n(rng));
    const Point shift{n(rng), n(rng)};
    const auto sim = [&](const Point& p) {
      return Point{s * (std::cos(t) * p[0] - std::sin(t) * p[1]) + shift[0],
                   s * (std::sin(t) * p[0] + std::cos(t) * p[1]) + shift[1]};
    };
    CHECK(std::abs(a - angle(sim(x), sim(z), sim(y))) <= 1e-12);
  }
}

TEST_CASE("boundary distance") {
  CHECK(boundary_distance(UnitBall{2}, Point{0.5, 0}) == 0.5);
  CHECK(boundary_distance(HalfSpace{2}, Point{3, 2}) == 2.0);
  CHECK(boundary_distance(kSquare, Point{0.25, 0.5}) == Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(boundary_distance(UnitBall{3}, Point{0.1, 0.1}), UsageError);
  CHECK(nearest_boundary_point(kSquare, Point{0.25, 0.5}) == Point{0, 0.5});
}

TEST_CASE("contains") {
  CHECK(contains(UnitBall{2}, Point{0.999, 0}));
  CHECK_FALSE(contains(UnitBall{2}, Point{1.0, 0}));
  CHECK(contains(kSquare, Point{0.5, 0.5}));
  CHECK_FALSE(contains(kSquare, Point{1.0, 0.5}));
  CHECK_FALSE(contains(HalfSpace{3}, Point{0, 0, 0}));
  CHECK_THROWS_AS(contains(HalfSpace{3}, Point{0, 1}), UsageError);
}

TEST_CASE("polygon validation") {
  CHECK_THROWS(ConvexPolygon{{Point{0, 0}, Point{1, 0}}});
  CHECK_THROWS(ConvexPolygon{{Point{0, 0}, Point{0, 1}, Point{1, 1}, Point{1, 0}}});
  CHECK_THROWS(ConvexPolygon{{Point{0, 0}, Point{1, 0}, Point{2, 0}, Point{1, 1}}});
  CHECK_THROWS(ConvexPolygon{{Point{0, 0}, Point{2, 0}, Point{1, 0.2}, Point{2, 2}, Point{0, 2}}});
  CHECK_THROWS(ConvexPolygon{{Point{0, 0}, Point{1, 0}, Point{1, 0}, Point{0, 1}}});
}

TEST_CASE("domain and point parsing") {
  CHECK(std::holds_alternative<UnitBall>(parse_domain("ball:3")));
  CHECK(dimension(parse_domain("half:4")) == 4);
  const Domain sq = parse_domain("poly:0,0;1,0;1,1;0,1");
  CHECK(describe(sq) == "poly:0,0;1,0;1,1;0,1");
  CHECK(describe(parse_domain(describe(sq))) == describe(sq));
  for (const char* bad : {"ball", "ball:1", "ball:x", "disk:2", "half:", "poly:0,0;1,0",
                          "poly:0,0;1;1,1", "poly:0,0;0,1;1,1;1,0"}) {
    CHECK_THROWS_AS(parse_domain(bad), UsageError);
  }
  CHECK(parse_point("0.5,-1e-3") == Point{0.5, -1e-3});
  for (const char* bad : {"", "1", "1,", "1,,2", "a,b", "1,2x", "nan,1"}) {
    CHECK_THROWS_AS(parse_point(bad), UsageError);
  }
}

TEST_CASE("ball automorphism") {
  const Point a{0.3, -0.4, 0.5};
  CHECK(norm(apply_moebius(ball_automorphism(a), a)) <= 1e-15);
  const Point z{0.1, 0.7, -0.2};
  CHECK(distance(apply_moebius(ball_automorphism(Point::zero(3)), z), z) == 0.0);

  Rng rng = make_rng(3, "T_a");
  for (int i = 0; i < 1000; ++i) {
    const Point x = random_point(UnitBall{3}, rng);
    const Point y = random_point(UnitBall{3}, rng);
    const double expect = std::tanh(oracle::rho_ball(raw(x), raw(y)) / 2);
    CHECK(std::abs(norm(apply_moebius(ball_automorphism(x), y)) - expect) <= 1e-10);
  }
  for (int dim : {2, 3}) {
    for (int i = 0; i < 1000; ++i) {
      const Point b = random_point(UnitBall{dim}, rng);
      const Point w = random_point(UnitBall{dim}, rng);
      CHECK(norm(apply_moebius(ball_automorphism(b), w)) < 1.0);
    }
  }
}

TEST_CASE("ball to half-space map") {
  const MoebiusMap g = ball_half_map(3);
  CHECK(distance(apply_moebius(g, Point::zero(3)), Point::unit(3, 2)) <= 1e-15);
  CHECK(norm(apply_moebius(g, Point::unit(3, 2))) <= 1e-15);
  Rng rng = make_rng(5, "B->H");
  for (int i = 0; i < 10000; ++i) {
    CHECK(apply_moebius(g, random_point(UnitBall{3}, rng)).last() > 0.0);
  }
}

TEST_CASE("Moebius round trips") {
  Rng rng = make_rng(9, "round trip");
  const std::vector<std::pair<MoebiusMap, Domain>> maps = {
      {sphere_inversion(Point{2, 0.5}, 0.7), UnitBall{2}},
      {reflection(Point{1, 2, -1}, 0.3), UnitBall{3}},
      {ball_automorphism(Point{0.6, -0.2}), UnitBall{2}},
      {ball_half_map(2), UnitBall{2}},
      {ball_half_map(3), HalfSpace{3}},
      {compose({ball_half_map(2), ball_automorphism(Point{0.5, -0.3}), ball_half_map(2)}),
       HalfSpace{2}},
  };
  for (const auto& [m, g] : maps) {
    const MoebiusMap inv = inverse(m);
    for (int i = 0; i < 1000; ++i) {
      const Point z = random_point(g, rng);
      const Point back = apply_moebius(inv, apply_moebius(m, z));
      CHECK(distance(back, z) <= 1e-10 * std::max(1.0, norm(z)));
    }
  }
}

TEST_CASE("hyperbolic invariance under Moebius maps") {
  Rng rng = make_rng(13, "invariance");
  const MoebiusMap ta = ball_automorphism(Point{0.2, 0.5, -0.1});
  const MoebiusMap bh = ball_half_map(3);
  for (int i = 0; i < 1000; ++i) {
    const Point x = random_point(UnitBall{3}, rng);
    const Point y = random_point(UnitBall{3}, rng);
    const double r = oracle::rho_ball(raw(x), raw(y));
    const double r_ta = oracle::rho_ball(raw(apply_moebius(ta, x)), raw(apply_moebius(ta, y)));
    const double r_bh = oracle::rho_half(raw(apply_moebius(bh, x)), raw(apply_moebius(bh, y)));
    CHECK(std::abs(r_ta - r) <= 1e-9 * std::max(1.0, r));
    CHECK(std::abs(r_bh - r) <= 1e-9 * std::max(1.0, r));
  }
}

TEST_CASE("pole evaluation") {
  CHECK_THROWS_AS(apply_moebius(sphere_inversion(Point{1, 1}, 0.5), Point{1, 1}), PoleError);
  CHECK_THROWS_AS(apply_moebius(ball_half_map(2), Point{0, -1}), PoleError);
}

TEST_CASE("random sampling stays inside and is reproducible") {
  const std::vector<Domain> domains = {UnitBall{2}, UnitBall{3}, HalfSpace{2}, HalfSpace{3},
                                       kSquare};
  for (const Domain& g : domains) {
    Rng a = make_rng(1, "s"), b = make_rng(1, "s");
    for (int i = 0; i < 500; ++i) {
      const auto [x, y] = random_pair(g, a);
      CHECK(contains(g, x));
      CHECK(contains(g, y));
      CHECK(distance(x, y) >= 1e-6);
      CHECK(random_pair(g, b).first == x);
    }
  }
  Rng r = make_rng(2, "poly");
  for (int i = 0; i < 50; ++i) CHECK_NOTHROW(random_convex_polygon(r));
}
