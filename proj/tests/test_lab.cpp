#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "vangle/errors.hpp"
#include "vangle/lab.hpp"
#include "vangle/metrics.hpp"
#include "vangle/sampling.hpp"

using namespace vangle;
using doctest::Approx;

namespace {

constexpr double kPi = oracle::kPi;

// Both v values from the symmetric-pair closed form, written out directly.
double radial_ratio_oracle(double a, double r, double theta) {
  const auto v = [theta](double t) {
    return 2 * std::atan(t * std::sin(theta) / (1 - t * std::cos(theta)));
  };
  return v(std::pow(r, a)) / v(r);
}

}  // namespace

TEST_CASE("v-spheres about the origin are Euclidean circles of radius sin M") {
  for (double m : {0.1, 0.5, 1.0, 1.5}) {
    const BallSample s = metric_ball_boundary(UnitBall{2}, Point{0, 0}, m, MetricKind::kV, 64);
    CHECK(s.points.size() == 64);
    CHECK_FALSE(s.exploratory);
    for (const Point& p : s.points) {
      CHECK(std::abs(norm(p) - std::sin(m)) <= 1e-8);
      CHECK(std::abs(vam(UnitBall{2}, Point{0, 0}, p).value - m) <= 1e-6);
    }
  }
}

TEST_CASE("j-sphere of radius log 2 about the origin") {
  const BallSample s =
      metric_ball_boundary(UnitBall{3}, Point{0, 0, 0}, std::log(2.0), MetricKind::kJ, 50);
  for (const Point& p : s.points) {
    CHECK(std::abs(norm(p) - 0.5) <= 1e-8);
    CHECK(std::abs(jmetric(UnitBall{3}, Point{0, 0, 0}, p).value - std::log(2.0)) <= 1e-6);
  }
}

TEST_CASE("traced points re-evaluate to the radius") {
  const std::vector<std::pair<Domain, Point>> cases = {
      {UnitBall{2}, Point{0.3, -0.2}},
      {HalfSpace{2}, Point{0.0, 1.0}},
      {ConvexPolygon{{Point{0, 0}, Point{2, 0}, Point{2, 1}, Point{0, 1}}}, Point{0.7, 0.5}},
  };
  for (const auto& [g, c] : cases) {
    for (MetricKind m : {MetricKind::kV, MetricKind::kJ, MetricKind::kRho}) {
      if (m == MetricKind::kRho && std::holds_alternative<ConvexPolygon>(g)) continue;
      const BallSample s = metric_ball_boundary(g, c, 0.4, m, 32);
      CHECK(s.exploratory);
      for (const Point& p : s.points) {
        CHECK(contains(g, p));
        CHECK(std::abs(metric_value(m, g, c, p) - 0.4) <= 1e-6);
      }
    }
  }
}

TEST_CASE("degenerate and unattainable radii") {
  const BallSample s = metric_ball_boundary(UnitBall{2}, Point{0.1, 0}, 0.0, MetricKind::kV, 8);
  for (const Point& p : s.points) CHECK(p == Point{0.1, 0});
  CHECK_THROWS_AS(metric_ball_boundary(UnitBall{2}, Point{0, 0}, kPi / 2, MetricKind::kV, 8),
                  RangeError);
  CHECK_THROWS_AS(metric_ball_boundary(UnitBall{2}, Point{0, 0}, -1.0, MetricKind::kV, 8),
                  RangeError);
}

TEST_CASE("ball sample serialization") {
  const BallSample s = metric_ball_boundary(UnitBall{2}, Point{0, 0}, 0.5, MetricKind::kV, 4);
  const std::string csv = to_csv(s);
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) continue;
    if (!header) {
      CHECK(line == "metric,domain,c1,c2,radius,x1,x2");
      header = true;
    } else {
      ++rows;
    }
  }
  CHECK(rows == 4);
  const nlohmann::json j = to_json(s);
  CHECK(j["metric"] == "v");
  CHECK(j["points"].size() == 4);
  CHECK(metric_from_string("rho") == MetricKind::kRho);
  CHECK_FALSE(metric_from_string("q").has_value());
}

TEST_CASE("sphere directions are unit vectors") {
  for (int dim : {2, 3, 4}) {
    const std::vector<Point> d = sphere_directions(dim, 100);
    CHECK(d.size() == 100);
    for (const Point& p : d) CHECK(std::abs(norm(p) - 1.0) <= 1e-14);
    CHECK(sphere_directions(dim, 100) == d);
  }
}

TEST_CASE("radial ratio") {
  for (double r : {1e-1, 1e-3, 1e-6, 0.5, 0.9}) {
    for (double theta : {0.1, kPi / 4, kPi / 2}) {
      CHECK(std::abs(radial_ratio(1.0, r, theta) - 1.0) <= 1e-12);
      CHECK(radial_ratio(0.5, r, theta) ==
            Approx(radial_ratio_oracle(0.5, r, theta)).epsilon(1e-12));
    }
  }
  const double q = radial_ratio(0.5, 1e-3, kPi / 4);
  CHECK(std::abs(q - std::sqrt(1e3)) <= 0.1 * std::sqrt(1e3));
  double prev = 0.0;
  for (double r : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
    const double cur = radial_ratio(0.5, r, kPi / 4);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK_THROWS_AS(radial_ratio(0.0, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(radial_ratio(0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(radial_ratio(0.5, 0.5, 2.0), DomainError);
}

TEST_CASE("radial map") {
  const MapSpec f{RadialMap{0.5}, UnitBall{2}};
  const Point z{0.3, -0.4};
  CHECK(norm(apply_map(f, z)) == Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(apply_map(MapSpec{IdentityMap{}, UnitBall{2}}, z) == z);
}

TEST_CASE("dilatation estimates") {
  const std::vector<double> radii = {1e-1, 1e-2, 1e-3, 1e-4};
  for (double h : dilatation_estimate({IdentityMap{}, UnitBall{2}}, Point{0.2, 0.1}, radii, 90)) {
    CHECK(std::abs(h - 1.0) <= 1e-9);
  }
  const std::vector<double> ta =
      dilatation_estimate({ball_automorphism(Point{0.4, 0.1}), UnitBall{2}}, Point{0.1, 0.2},
                          radii, 360);
  for (std::size_t i = 1; i < ta.size(); ++i) CHECK(ta[i] <= ta[i - 1] + 1e-9);
  CHECK(std::abs(ta.back() - 1.0) <= 1e-3);

  CHECK_THROWS_AS(
      dilatation_estimate({IdentityMap{}, UnitBall{2}}, Point{0.5, 0}, {0.6}, 10), RangeError);

  // The radial map at 0.5 e1 against 4L^2 with L measured on nearby pairs.
  const MapSpec radial{RadialMap{0.5}, UnitBall{2}};
  const Point x{0.5, 0.0};
  Rng rng = make_rng(47, "radial L");
  std::vector<std::pair<Point, Point>> pairs;
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  while (pairs.size() < 500) {
    const Point a = x + Point{u(rng), u(rng)}, b = x + Point{u(rng), u(rng)};
    if (distance(a, b) > 1e-6) pairs.emplace_back(a, b);
  }
  const LipschitzEstimate l = measure_v_lipschitz(radial, UnitBall{2}, pairs);
  const std::vector<double> h = dilatation_estimate(radial, x, {1e-2, 1e-4, 1e-6}, 360);
  CHECK(std::abs(h.back() - 2.0) <= 1e-3);
  CHECK(h.back() <= 4 * l.constant * l.constant);
}

TEST_CASE("v-Lipschitz constant of Moebius maps is at most 2") {
  Rng rng = make_rng(53, "mobius L");
  std::vector<std::pair<Point, Point>> pairs;
  for (int i = 0; i < 500; ++i) pairs.push_back(random_pair(UnitBall{2}, rng));
  const LipschitzEstimate l =
      measure_v_lipschitz({ball_half_map(2), UnitBall{2}}, HalfSpace{2}, pairs);
  CHECK(l.constant >= 1.0);
  CHECK(l.constant <= 2.0 + 1e-9);
  const LipschitzEstimate id = measure_v_lipschitz({IdentityMap{}, UnitBall{2}}, UnitBall{2}, pairs);
  CHECK(id.constant == Approx(1.0).epsilon(1e-12));
}
