// Suites built on the lab experiments: the radial map and dilatation
// estimates.

#include <algorithm>
#include <cmath>

#include "vangle/lab.hpp"
#include "vangle/metrics.hpp"
#include "vangle/sampling.hpp"
#include "verify_internal.hpp"

namespace vangle::detail {
namespace {

constexpr CheckKind kSample = CheckKind::kSampleMap;

std::vector<double> decades(double scale, int count) {
  std::vector<double> out;
  for (int k = 1; k <= count; ++k) out.push_back(scale * std::pow(10.0, -k));
  return out;
}

int directions_for(int dim) { return dim == 2 ? 360 : 400; }

}  // namespace

std::vector<Check> suite_radial_divergence(const VerifyConfig&) {
  std::vector<Check> out;
  const double quarter = kPi / 4.0;
  run_check(out, "ratio at (a, theta, r) = (0.5, pi/4, 1e-3) in [28, 35]", kSample,
            [&](CheckBuilder& b) {
              const double v = radial_ratio(0.5, 1e-3, quarter);
              b.observe("ratio", v);
              b.observe("r^(-1/2)", std::pow(1e-3, -0.5));
              b.consider(std::max(28.0 - v, v - 35.0), [&] { return json{{"ratio", v}}; });
            });
  run_check(out, "ratio grows as r decreases by decades", kSample, [&](CheckBuilder& b) {
    const std::vector<double> rs = decades(1.0, 5);
    json values = json::array();
    double prev = 0.0;
    for (double r : rs) {
      const double v = radial_ratio(0.5, r, quarter);
      values.push_back({{"r", r}, {"ratio", v}});
      b.consider(prev - v, [&] { return json{{"r", r}, {"ratio", v}, {"previous", prev}}; });
      prev = v;
    }
    b.observe("ratios", values);
  });
  run_check(out, "a = 1 gives ratio 1", kSample, [&](CheckBuilder& b) {
    for (double r : decades(1.0, 8)) {
      for (double theta : {kPi / 8.0, quarter, 3.0 * kPi / 8.0, kHalfPi}) {
        const double v = radial_ratio(1.0, r, theta);
        b.consider(std::abs(v - 1.0) - 1e-12,
                   [&] { return json{{"r", r}, {"theta", theta}, {"ratio", v}}; });
      }
    }
  });
  run_check(out, "closed form matches v on the mapped pair", kSample, [&](CheckBuilder& b) {
    const UnitBall disk{2};
    const MapSpec f{RadialMap{0.5}, disk};
    for (double r : decades(1.0, 5)) {
      for (double theta : {kPi / 8.0, quarter, 3.0 * kPi / 8.0, kHalfPi}) {
        const Point x{r * std::cos(theta), r * std::sin(theta)};
        const Point y{r * std::cos(theta), -r * std::sin(theta)};
        const double direct =
            vam(disk, apply_map(f, x), apply_map(f, y)).value / vam(disk, x, y).value;
        const double closed = radial_ratio(0.5, r, theta);
        b.consider(std::abs(direct - closed) / closed - 1e-9, [&] {
          return json{{"r", r}, {"theta", theta}, {"direct", direct}, {"closed_form", closed}};
        });
      }
    }
  });
  return out;
}

std::vector<Check> suite_dilatation_mthf(const VerifyConfig& c) {
  std::vector<Check> out;
  struct Case {
    std::string name;
    MapSpec f;
    Domain target;
    Point x;
  };
  const std::vector<Case> conformal = {
      {"T_a on ball 2", {ball_automorphism(Point{0.3, 0.4}), UnitBall{2}}, UnitBall{2},
       Point{0.1, -0.2}},
      {"T_a on ball 3", {ball_automorphism(Point{0.3, 0.4, -0.2}), UnitBall{3}}, UnitBall{3},
       Point{0.1, -0.2, 0.3}},
      {"ball 2 -> half-space 2", {ball_half_map(2), UnitBall{2}}, HalfSpace{2}, Point{0.2, 0.3}},
      {"ball 3 -> half-space 3", {ball_half_map(3), UnitBall{3}}, HalfSpace{3},
       Point{0.2, 0.3, -0.1}},
      {"half-space 2 -> half-space 2",
       {compose({ball_half_map(2), ball_automorphism(Point{0.5, -0.3}), ball_half_map(2)}),
        HalfSpace{2}},
       HalfSpace{2},
       Point{0.5, 0.7}},
  };

  for (const Case& cs : conformal) {
    const std::vector<double> radii = decades(boundary_distance(cs.f.source, cs.x), 6);
    run_check(out, "H -> 1 [" + cs.name + "]", kSample, [&](CheckBuilder& b) {
      const std::vector<double> h =
          dilatation_estimate(cs.f, cs.x, radii, directions_for(cs.x.dim()));
      b.observe("estimates", h);
      b.consider(std::abs(h.back() - 1.0) - c.limit_tolerance,
                 [&] { return json{{"radius", radii.back()}, {"estimate", h.back()}}; });
      for (std::size_t i = 1; i < h.size(); ++i) {
        b.consider((h[i] - 1.0) - (h[i - 1] - 1.0) - 1e-9,
                   [&] { return json{{"radius", radii[i]}, {"estimate", h[i]}}; });
      }
    });
    run_check(out, "H <= 4L^2 [" + cs.name + "]", kSample, [&](CheckBuilder& b) {
      Rng rng = make_rng(c.seed, "DILATATION_MTHF/" + cs.name);
      std::vector<std::pair<Point, Point>> pairs;
      for (int i = 0; i < c.map_pair_count; ++i) pairs.push_back(random_pair(cs.f.source, rng));
      const LipschitzEstimate l = measure_v_lipschitz(cs.f, cs.target, pairs);
      const double h =
          dilatation_estimate(cs.f, cs.x, {radii.front()}, directions_for(cs.x.dim())).front();
      b.observe("L", l.constant);
      b.observe("H", h);
      b.observe("4L^2", 4.0 * l.constant * l.constant);
      b.consider(l.constant - 2.0 - 1e-6, [&] {
        return json{{"x", point_json(l.x)}, {"y", point_json(l.y)}, {"L", l.constant}};
      });
      b.consider(h - 4.0 * l.constant * l.constant,
                 [&] { return json{{"radius", radii.front()}, {"H", h}}; });
    });
  }

  run_check(out, "radial map a = 0.5 at 0.5 e1: H -> 2", kSample, [&](CheckBuilder& b) {
    const MapSpec f{RadialMap{0.5}, UnitBall{2}};
    const Point x{0.5, 0.0};
    const std::vector<double> radii = decades(0.5, 6);
    const std::vector<double> h = dilatation_estimate(f, x, radii, directions_for(2));
    b.observe("estimates", h);
    b.consider(std::abs(h.back() - 2.0) - c.limit_tolerance,
               [&] { return json{{"radius", radii.back()}, {"estimate", h.back()}}; });
  });
  run_check(out, "identity: H = 1", kSample, [&](CheckBuilder& b) {
    const MapSpec f{IdentityMap{}, UnitBall{2}};
    const Point x{0.3, 0.1};
    const std::vector<double> radii = decades(0.5, 6);
    const std::vector<double> h = dilatation_estimate(f, x, radii, directions_for(2));
    for (std::size_t i = 0; i < h.size(); ++i) {
      b.consider(std::abs(h[i] - 1.0) - 1e-8,
                 [&] { return json{{"radius", radii[i]}, {"estimate", h[i]}}; });
    }
  });
  return out;
}

}  // namespace vangle::detail
