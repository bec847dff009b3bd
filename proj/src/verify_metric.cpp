// Suites that evaluate the metrics on random pairs and concrete Moebius maps.

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vangle/errors.hpp"
#include "vangle/lab.hpp"
#include "vangle/metrics.hpp"
#include "vangle/sampling.hpp"
#include "vangle/specfun.hpp"
#include "verify_internal.hpp"

namespace vangle::detail {
namespace {

constexpr CheckKind kScalar = CheckKind::kScalarCertified;
constexpr CheckKind kSample = CheckKind::kSampleMap;

const double kVkConstant = kPi / std::log(4.0);

std::string tag(const char* key, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, " [%s=%g]", key, v);
  return buf;
}

std::string on(const Domain& g) { return " [" + describe(g) + "]"; }

json pair_json(const Point& x, const Point& y) {
  return {{"x", point_json(x)}, {"y", point_json(y)}};
}

std::vector<std::pair<Point, Point>> pairs_in(const Domain& g, int count, Rng& rng) {
  std::vector<std::pair<Point, Point>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(random_pair(g, rng));
  return out;
}

// Pairs with |x|, |y| <= bound: keeps the polyline solver away from the
// regime where k and rho agree to within its discretization error.
std::vector<std::pair<Point, Point>> inner_pairs(const Domain& g, int count, double bound,
                                                 Rng& rng) {
  std::vector<std::pair<Point, Point>> out;
  while (static_cast<int>(out.size()) < count) {
    auto p = random_pair(g, rng);
    if (norm(p.first) <= bound && norm(p.second) <= bound) out.push_back(std::move(p));
  }
  return out;
}

double th_half_rho(const Domain& g, const Point& x, const Point& y) {
  const double sh = rho_half_sinh(g, x, y);
  return sh / std::hypot(1.0, sh);
}

// A random Moebius self-map of the disk: T_a, followed by a reflection in a
// line through the origin every other time.
MoebiusMap random_disk_map(Rng& rng, int i) {
  const Point a = random_point(UnitBall{2}, rng);
  const Point normal = random_unit_vector(2, rng);
  if (i % 2 == 0) return ball_automorphism(a);
  return compose({ball_automorphism(a), reflection(normal, 0.0)});
}

struct QhValue {
  double value = 0.0;
  bool converged = true;
};

QhValue qh_upper(const Domain& g, const Point& x, const Point& y) {
  try {
    return {qh_distance(g, x, y).value, true};
  } catch (const ConvergenceError& e) {
    return {e.best_value(), false};
  }
}

const std::vector<Domain>& balls_and_half_spaces() {
  static const std::vector<Domain> domains = {UnitBall{2}, UnitBall{3}, HalfSpace{2},
                                              HalfSpace{3}};
  return domains;
}

struct NamedMap {
  std::string name;
  MoebiusMap map;
  Domain source;
  Domain target;
};

}  // namespace

std::vector<Check> suite_cgqm_chain(const VerifyConfig& c) {
  std::vector<Check> out;
  const UnitBall disk{2};
  struct Sample {
    Point x, y, fx, fy;
  };
  std::vector<Sample> samples;
  Rng rng = make_rng(c.seed, "CGQM_CHAIN/maps");
  for (int i = 0; i < c.map_pair_count; ++i) {
    const MoebiusMap f = random_disk_map(rng, i);
    auto [x, y] = random_pair(disk, rng);
    Point fx = apply_moebius(f, x);
    Point fy = apply_moebius(f, y);
    samples.push_back({std::move(x), std::move(y), std::move(fx), std::move(fy)});
  }

  run_check(out, "equality for Moebius self-maps (K=1)", kSample, [&](CheckBuilder& b) {
    for (const Sample& s : samples) {
      const double before = th_half_rho(disk, s.x, s.y);
      const double after = th_half_rho(disk, s.fx, s.fy);
      b.consider(std::abs(after - before) - 1e-10, [&] {
        return json{{"x", point_json(s.x)}, {"y", point_json(s.y)}, {"th_before", before},
                    {"th_after", after}};
      });
    }
  });
  for (double k : nontrivial_k(c)) {
    run_check(out, "th(rho_f/2) <= phi_K(th(rho/2))" + tag("K", k), kSample,
              [&](CheckBuilder& b) {
                for (const Sample& s : samples) {
                  const double bound = phi(k, th_half_rho(disk, s.x, s.y));
                  const double after = th_half_rho(disk, s.fx, s.fy);
                  b.consider(after - bound - c.tolerance, [&] {
                    return json{{"x", point_json(s.x)}, {"y", point_json(s.y)},
                                {"th_after", after}, {"bound", bound}};
                  });
                }
              });
  }
  run_check(out, "v ratio <= 2 for Moebius self-maps", kSample, [&](CheckBuilder& b) {
    double worst = 0.0;
    for (const Sample& s : samples) {
      const double before = vam(disk, s.x, s.y).value;
      const double after = vam(disk, s.fx, s.fy).value;
      worst = std::max(worst, after / before);
      b.consider(after - 2.0 * before - 1e-6,
                 [&] { return json{{"x", point_json(s.x)}, {"y", point_json(s.y)}}; });
    }
    b.observe("max_ratio", worst);
  });
  for (double k : c.k_list) {
    run_check(out, "phi_K increasing" + tag("K", k), kScalar, [&](CheckBuilder& b) {
      check_monotone(b, monotone_grid(0.0, 1.0, c.monotone_spacing, false),
                     [k](double r) { return phi(k, r); }, +1, c.monotone_tolerance);
    });
  }
  return out;
}

std::vector<Check> suite_jk_corollary(const VerifyConfig& c) {
  std::vector<Check> out;
  const auto grid = rho_grid(c);
  for (double k : c.k_list) {
    // j and k are both at least rho/2, and the image distances are at most
    // rho_f = 2 artanh(phi_K(th(rho/2))).
    run_check(out, "j and k ratio <= 2c(K)" + tag("K", k), kScalar, [&](CheckBuilder& b) {
      const double bound = 2.0 * bv_constant(k);
      double sup = 0.0;
      int skipped = 0;
      for (const auto& [m, rho] : grid) {
        const Modulus s = phi_modulus(k, m);
        if (s.rc == 0.0) {
          ++skipped;
          continue;
        }
        const double lower = 0.5 * rho;
        const double ratio = 2.0 * arth(s) / std::max(lower, std::pow(lower, 1.0 / k));
        sup = std::max(sup, ratio);
        b.consider(ratio - bound - c.tolerance,
                   [&] { return json{{"rho", rho}, {"ratio", ratio}}; });
      }
      b.observe("2c(K)", bound);
      b.observe("sup_ratio", sup);
      b.observe("skipped_complement_underflow", skipped);
    });
  }

  const UnitBall disk{2};
  Rng rng = make_rng(c.seed, "JK_COROLLARY/maps");
  run_check(out, "Moebius self-maps: j(f) <= 2j and k(f) <= rho(f) <= 2j", kSample,
            [&](CheckBuilder& b) {
              for (int i = 0; i < c.map_pair_count; ++i) {
                const MoebiusMap f = random_disk_map(rng, i);
                const auto [x, y] = random_pair(disk, rng);
                const Point fx = apply_moebius(f, x);
                const Point fy = apply_moebius(f, y);
                const double j = jmetric(disk, x, y).value;
                const double jf = jmetric(disk, fx, fy).value;
                const double rf = rho(disk, fx, fy).value;
                const auto witness = [&] {
                  return json{{"x", point_json(x)}, {"y", point_json(y)}, {"j", j},
                              {"j_f", jf}, {"rho_f", rf}};
                };
                b.consider(jf - 2.0 * j - c.tolerance, witness);
                b.consider(rf - 2.0 * j - c.tolerance, witness);
              }
            });
  return out;
}

std::vector<Check> suite_mthm1(const VerifyConfig& c) {
  std::vector<Check> out;
  for (const Domain& g : balls_and_half_spaces()) {
    Rng rng = make_rng(c.seed, "MTHM1/" + describe(g));
    const auto pairs = pairs_in(g, c.pair_count, rng);
    std::vector<double> v(pairs.size());
    std::vector<double> rs(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      v[i] = vam(g, pairs[i].first, pairs[i].second).value;
      rs[i] = rho_star(g, pairs[i].first, pairs[i].second).value;
    }
    run_check(out, "rho* <= v" + on(g), kSample, [&](CheckBuilder& b) {
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        b.consider(rs[i] - v[i] - c.tolerance, [&] {
          json w = pair_json(pairs[i].first, pairs[i].second);
          w["v"] = v[i];
          w["rho_star"] = rs[i];
          return w;
        });
      }
    });
    run_check(out, "v <= 2 rho*" + on(g), kSample, [&](CheckBuilder& b) {
      double worst = 0.0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        worst = std::max(worst, v[i] / rs[i]);
        b.consider(v[i] - 2.0 * rs[i] - c.tolerance, [&] {
          json w = pair_json(pairs[i].first, pairs[i].second);
          w["v"] = v[i];
          w["rho_star"] = rs[i];
          return w;
        });
      }
      b.observe("max_ratio", worst);
    });
  }

  run_check(out, "ratio v/rho* exceeds 1.99 near the boundary [ball 2]", kSample,
            [&](CheckBuilder& b) {
              const UnitBall disk{2};
              double best = 0.0;
              double best_t = 0.0;
              for (int e = 1; e <= 8; ++e) {
                const double gap = std::pow(10.0, -e);
                const double t = 1.0 - gap;
                const Point x{t * std::cos(gap), t * std::sin(gap)};
                const Point y{t * std::cos(gap), -t * std::sin(gap)};
                const double ratio = vam(disk, x, y).value / rho_star(disk, x, y).value;
                if (ratio > best) {
                  best = ratio;
                  best_t = t;
                }
              }
              b.observe("max_ratio", best);
              b.consider(1.99 - best, [&] { return json{{"t", best_t}, {"ratio", best}}; });
            });
  for (int n : {2, 3}) {
    const HalfSpace h{n};
    run_check(out, "parallel pairs attain 2" + on(h), kSample, [&](CheckBuilder& b) {
      for (int e = -30; e <= 30; ++e) {
        const double s = std::pow(10.0, e / 10.0);
        Point x = Point::unit(n, n - 1);
        Point y = x + s * Point::unit(n, 0);
        const double ratio = vam(h, x, y).value / rho_star(h, x, y).value;
        b.consider(std::abs(ratio - 2.0) - 1e-10, [&] { return json{{"s", s}, {"ratio", ratio}}; });
      }
    });
  }

  for (const Domain& g : {Domain{UnitBall{3}}, Domain{HalfSpace{3}}}) {
    run_check(out, "plane reduction matches boundary search" + on(g), kSample,
              [&](CheckBuilder& b) {
                Rng rng = make_rng(c.seed, "MTHM1/oracle/" + describe(g));
                double worst = 0.0;
                for (int i = 0; i < c.oracle_pairs; ++i) {
                  const auto [x, y] = random_pair(g, rng);
                  const double v = vam(g, x, y).value;
                  const double sup = stochastic_boundary_sup(
                      g, x, y, c.oracle_samples, c.seed + static_cast<std::uint64_t>(i));
                  worst = std::max(worst, std::abs(v - sup));
                  b.consider(std::abs(v - sup) - 1e-6, [&] {
                    json w = pair_json(x, y);
                    w["v"] = v;
                    w["stochastic_sup"] = sup;
                    return w;
                  });
                }
                b.observe("max_abs_difference", worst);
              });
  }
  return out;
}

std::vector<Check> suite_jrho_jk(const VerifyConfig& c) {
  std::vector<Check> out;
  for (int n : {2, 3}) {
    const UnitBall g{n};
    run_check(out, "rho/2 <= j <= rho" + on(g), kSample, [&](CheckBuilder& b) {
      Rng rng = make_rng(c.seed, "JRHO_JK/j/" + describe(g));
      for (int i = 0; i < c.pair_count; ++i) {
        const auto [x, y] = random_pair(g, rng);
        const double r = rho(g, x, y).value;
        const double j = jmetric(g, x, y).value;
        const auto witness = [&] {
          json w = pair_json(x, y);
          w["rho"] = r;
          w["j"] = j;
          return w;
        };
        b.consider(0.5 * r - j - c.tolerance, witness);
        b.consider(j - r - c.tolerance, witness);
      }
    });
    run_check(out, "rho/2 <= k <= rho and j <= k" + on(g), kSample, [&](CheckBuilder& b) {
      Rng rng = make_rng(c.seed, "JRHO_JK/k/" + describe(g));
      int unconverged = 0;
      for (const auto& [x, y] : inner_pairs(g, c.oracle_pairs, 0.95, rng)) {
        const double r = rho(g, x, y).value;
        const double j = jmetric(g, x, y).value;
        const QhValue k = qh_upper(g, x, y);
        if (!k.converged) ++unconverged;
        const auto witness = [&] {
          json w = pair_json(x, y);
          w["rho"] = r;
          w["j"] = j;
          w["k"] = k.value;
          return w;
        };
        b.consider(0.5 * r - k.value - c.tolerance, witness);
        b.consider(k.value - r - c.tolerance * r, witness);
        b.consider(j - k.value - c.tolerance, witness);
      }
      b.observe("unconverged", unconverged);
    });
  }
  return out;
}

std::vector<Check> suite_bcb(const VerifyConfig& c) {
  std::vector<Check> out;
  std::vector<Domain> domains = balls_and_half_spaces();
  Rng poly_rng = make_rng(c.seed, "BCB/polygons");
  for (int i = 0; i < c.polygon_count; ++i) domains.emplace_back(random_convex_polygon(poly_rng));

  for (std::size_t d = 0; d < domains.size(); ++d) {
    const Domain& g = domains[d];
    const std::string name = std::holds_alternative<ConvexPolygon>(g)
                                 ? " [polygon " + std::to_string(d - 4) + "]"
                                 : on(g);
    run_check(out, "distance-ratio bounds" + name, kSample, [&](CheckBuilder& b) {
      Rng rng = make_rng(c.seed, "BCB/pairs/" + describe(g));
      for (int i = 0; i < c.pair_count; ++i) {
        const auto [x, y] = random_pair(g, rng);
        const double v = vam(g, x, y).value;
        const Enclosure e = vam_bounds_distance_ratio(g, x, y);
        const auto witness = [&] {
          json w = pair_json(x, y);
          w["v"] = v;
          w["lower"] = e.lower;
          w["upper"] = e.upper;
          return w;
        };
        b.consider(e.lower - v - c.tolerance, witness);
        b.consider(v - e.upper - c.tolerance, witness);
      }
      if (std::holds_alternative<ConvexPolygon>(g)) b.observe("domain", describe(g));
    });
  }

  const HalfSpace h{2};
  const Point x{0.0, 1.0};
  run_check(out, "perpendicular family attains the lower bound [half-space 2]", kSample,
            [&](CheckBuilder& b) {
              for (int e = -30; e <= 30; ++e) {
                const double t = std::pow(10.0, e / 10.0);
                const double v = vam(h, x, Point{0.0, 1.0 + t}).value;
                const double bound = std::asin(t / (t + 2.0));
                b.consider(std::abs(v - bound) - 1e-6,
                           [&] { return json{{"t", t}, {"v", v}, {"bound", bound}}; });
              }
            });
  run_check(out, "parallel family attains the upper bound [half-space 2]", kSample,
            [&](CheckBuilder& b) {
              for (int e = -30; e <= 30; ++e) {
                const double t = std::pow(10.0, e / 10.0);
                const double v = vam(h, x, Point{t, 1.0}).value;
                const double bound = 2.0 * std::asin(t / std::sqrt(4.0 + t * t));
                b.consider(std::abs(v - bound) - 1e-6,
                           [&] { return json{{"t", t}, {"v", v}, {"bound", bound}}; });
              }
            });
  return out;
}

std::vector<Check> suite_vk(const VerifyConfig& c) {
  std::vector<Check> out;
  struct Case {
    std::string name;
    Domain g;
    int pairs;
  };
  std::vector<Case> cases;
  for (const Domain& g : balls_and_half_spaces()) cases.push_back({on(g), g, c.qh_pair_count});
  Rng poly_rng = make_rng(c.seed, "VK/polygons");
  const int per_polygon = std::max(1, c.qh_pair_count / c.polygon_count);
  for (int i = 0; i < c.polygon_count; ++i) {
    cases.push_back({" [polygon " + std::to_string(i) + "]",
                     Domain{random_convex_polygon(poly_rng)}, per_polygon});
  }

  double max_vj = 0.0;
  json max_vj_witness;
  for (const Case& cs : cases) {
    run_check(out, "v <= (pi/log 4) k" + cs.name, kSample, [&](CheckBuilder& b) {
      Rng rng = make_rng(c.seed, "VK/pairs/" + describe(cs.g));
      int unconverged = 0;
      double worst = 0.0;
      for (int i = 0; i < cs.pairs; ++i) {
        const auto [x, y] = random_pair(cs.g, rng);
        const double v = vam(cs.g, x, y).value;
        const QhValue k = qh_upper(cs.g, x, y);
        const double j = jmetric(cs.g, x, y).value;
        if (!k.converged) ++unconverged;
        worst = std::max(worst, v / (kVkConstant * k.value));
        if (v / (kVkConstant * j) > max_vj) {
          max_vj = v / (kVkConstant * j);
          max_vj_witness = pair_json(x, y);
          max_vj_witness["domain"] = describe(cs.g);
        }
        b.consider(v - kVkConstant * k.value - 1e-6, [&] {
          json w = pair_json(x, y);
          w["v"] = v;
          w["k_upper"] = k.value;
          return w;
        });
      }
      b.observe("c", kVkConstant);
      b.observe("max_v_over_ck", worst);
      b.observe("unconverged", unconverged);
      if (std::holds_alternative<ConvexPolygon>(cs.g)) b.observe("domain", describe(cs.g));
    });
  }
  run_check(out, "v against (pi/log 4) j (informational)", kSample, [&](CheckBuilder& b) {
    b.observe("c", kVkConstant);
    b.observe("max_v_over_cj", max_vj);
    b.observe("exceeds_one", max_vj > 1.0);
    // The distance-ratio upper bound caps v / (c j) on every convex domain.
    double cap = 0.0;
    for (int e = -4000; e <= 4000; ++e) {
      const double t = std::pow(10.0, e / 1000.0);
      cap = std::max(cap, 2.0 * std::asin(t / std::sqrt(4.0 + t * t)) /
                              (kVkConstant * std::log1p(t)));
    }
    b.observe("bound_implied_sup", cap);
    b.observe("at", max_vj_witness);
    b.informational();
  });
  return out;
}

std::vector<Check> suite_red(const VerifyConfig& c) {
  std::vector<Check> out;
  const std::vector<double> grid = monotone_grid(0.0, 1.0, c.monotone_spacing, false);
  for (int n : {2, 3}) {
    const UnitBall g{n};
    run_check(out, "v(-x,x) < 2 v(0,x)" + on(g), kSample, [&](CheckBuilder& b) {
      for (double t : grid) {
        const Point x = t * Point::unit(n, 0);
        const double diameter = vam(g, -x, x).value;
        const double radius = vam(g, Point::zero(n), x).value;
        b.consider(diameter - 2.0 * radius,
                   [&] { return json{{"t", t}, {"diameter", diameter}, {"radius", radius}}; });
      }
    });
    run_check(out, "v(-x,x) = 2 arcsin(t/sqrt(1+t^2))" + on(g), kSample, [&](CheckBuilder& b) {
      for (double t : grid) {
        const Point x = t * Point::unit(n, 0);
        const double v = vam(g, -x, x).value;
        const double exact = 2.0 * std::asin(t / std::sqrt(1.0 + t * t));
        b.consider(std::abs(v - exact) - 1e-12,
                   [&] { return json{{"t", t}, {"v", v}, {"closed_form", exact}}; });
      }
    });
    run_check(out, "traced v-spheres are circles of radius sin M" + on(g), kSample,
              [&](CheckBuilder& b) {
                for (double m : {0.1, 0.5, 1.0, 1.5}) {
                  const BallSample s =
                      metric_ball_boundary(g, Point::zero(n), m, MetricKind::kV, 64);
                  for (const Point& p : s.points) {
                    b.consider(std::abs(norm(p) - std::sin(m)) - 1e-8, [&] {
                      return json{{"M", m}, {"point", point_json(p)}, {"norm", norm(p)}};
                    });
                  }
                  double diameter = 0.0;
                  for (std::size_t i = 0; i < s.points.size(); ++i) {
                    for (std::size_t k = i + 1; k < s.points.size(); ++k) {
                      diameter = std::max(diameter, vam(g, s.points[i], s.points[k]).value);
                    }
                  }
                  b.observe("diameter_M=" + std::to_string(m).substr(0, 3), diameter);
                  b.consider(diameter - 2.0 * m,
                             [&] { return json{{"M", m}, {"diameter", diameter}}; });
                }
              });
  }
  return out;
}

std::vector<Check> suite_moebius_v_bilip(const VerifyConfig& c) {
  std::vector<Check> out;
  const Point a2{0.5, -0.3};
  const std::vector<NamedMap> maps = {
      {"ball 2 -> half-space 2", ball_half_map(2), UnitBall{2}, HalfSpace{2}},
      {"ball 3 -> half-space 3", ball_half_map(3), UnitBall{3}, HalfSpace{3}},
      {"half-space 2 -> ball 2", ball_half_map(2), HalfSpace{2}, UnitBall{2}},
      {"half-space 3 -> ball 3", ball_half_map(3), HalfSpace{3}, UnitBall{3}},
      {"T_a on ball 2", ball_automorphism(a2), UnitBall{2}, UnitBall{2}},
      {"half-space 2 -> half-space 2",
       compose({ball_half_map(2), ball_automorphism(a2), ball_half_map(2)}), HalfSpace{2},
       HalfSpace{2}},
  };
  for (const NamedMap& m : maps) {
    struct Row {
      Point x, y;
      double v, vf, r, rf;
    };
    std::vector<Row> rows;
    Rng rng = make_rng(c.seed, "MOEBIUS_V_BILIP/" + m.name);
    for (int i = 0; i < c.map_pair_count; ++i) {
      auto [x, y] = random_pair(m.source, rng);
      const Point fx = apply_moebius(m.map, x);
      const Point fy = apply_moebius(m.map, y);
      rows.push_back({x, y, vam(m.source, x, y).value, vam(m.target, fx, fy).value,
                      rho(m.source, x, y).value, rho(m.target, fx, fy).value});
    }
    const auto witness = [](const Row& r) {
      json w = pair_json(r.x, r.y);
      w["v"] = r.v;
      w["v_f"] = r.vf;
      w["rho"] = r.r;
      w["rho_f"] = r.rf;
      return w;
    };
    run_check(out, "v/2 <= v(f) <= 2v [" + m.name + "]", kSample, [&](CheckBuilder& b) {
      double worst = 1.0;
      for (const Row& r : rows) {
        worst = std::max({worst, r.vf / r.v, r.v / r.vf});
        b.consider(r.vf - 2.0 * r.v - 1e-6, [&] { return witness(r); });
        b.consider(0.5 * r.v - r.vf - 1e-6, [&] { return witness(r); });
      }
      b.observe("max_distortion", worst);
    });
    run_check(out, "rho invariant [" + m.name + "]", kSample, [&](CheckBuilder& b) {
      for (const Row& r : rows) {
        b.consider(std::abs(r.rf - r.r) - c.tolerance * (1.0 + r.r), [&] { return witness(r); });
      }
    });
  }

  for (int n : {2, 3}) {
    const UnitBall g{n};
    run_check(out, "T_a(a) = 0 and |T_x(y)| = th(rho/2)" + on(g), kSample, [&](CheckBuilder& b) {
      Rng rng = make_rng(c.seed, "MOEBIUS_V_BILIP/identities/" + describe(g));
      for (int i = 0; i < c.pair_count; ++i) {
        const Point a = random_point(g, rng);
        const auto [x, y] = random_pair(g, rng);
        const double at_a = norm(apply_moebius(ball_automorphism(a), a));
        const double txy = norm(apply_moebius(ball_automorphism(x), y));
        const double th = std::tanh(0.5 * rho(g, x, y).value);
        b.consider(at_a - 1e-10, [&] { return json{{"a", point_json(a)}, {"|T_a(a)|", at_a}}; });
        b.consider(std::abs(txy - th) - 1e-10, [&] {
          json w = pair_json(x, y);
          w["|T_x(y)|"] = txy;
          w["th(rho/2)"] = th;
          return w;
        });
      }
    });
  }

  // Moebius maps change v by at most 2 and an L-bilipschitz self-map of the
  // ball is 4L-bilipschitz for rho: H->H gives 4 (2 2 L) = 16L, one-sided
  // changes give 4 (2 L) = 8L.
  run_check(out, "composition constants 16L and 8L", kScalar, [&](CheckBuilder& b) {
    constexpr double kMoebiusFactor = 2.0;
    constexpr double kBallFactor = 4.0;
    for (double l : c.l_list) {
      const double both = kBallFactor * (kMoebiusFactor * l * kMoebiusFactor);
      const double one = kBallFactor * (kMoebiusFactor * l);
      b.consider(std::abs(both - 16.0 * l), [&] { return json{{"L", l}, {"constant", both}}; });
      b.consider(std::abs(one - 8.0 * l), [&] { return json{{"L", l}, {"constant", one}}; });
    }
  });
  return out;
}

std::vector<Check> suite_qh_oracle(const VerifyConfig& c) {
  std::vector<Check> out;
  for (int n : {2, 3}) {
    const HalfSpace h{n};
    run_check(out, "k = rho within 1e-3 relative" + on(h), kSample, [&](CheckBuilder& b) {
      Rng rng = make_rng(c.seed, "QH_ORACLE/" + describe(h));
      double worst = 0.0;
      for (int i = 0; i < c.oracle_pairs; ++i) {
        const auto [x, y] = random_pair(h, rng);
        const double r = rho(h, x, y).value;
        const double k = qh_distance(h, x, y).value;
        const double rel = std::abs(k - r) / r;
        worst = std::max(worst, rel);
        b.consider(rel - 1e-3, [&] {
          json w = pair_json(x, y);
          w["k"] = k;
          w["rho"] = r;
          return w;
        });
      }
      b.observe("max_relative_error", worst);
    });
  }
  for (int n : {2, 3}) {
    const UnitBall g{n};
    run_check(out, "radial k = log(1/(1-t))" + on(g), kSample, [&](CheckBuilder& b) {
      for (double t : {0.1, 0.5, 0.9, 0.99}) {
        const double k = qh_distance(g, Point::zero(n), t * Point::unit(n, 0)).value;
        const double exact = -std::log1p(-t);
        b.observe("t=" + std::to_string(t).substr(0, 4), k);
        b.consider(std::abs(k - exact) - 1e-4,
                   [&] { return json{{"t", t}, {"k", k}, {"closed_form", exact}}; });
      }
    });
    run_check(out, "rho/2 <= k <= rho" + on(g), kSample, [&](CheckBuilder& b) {
      Rng rng = make_rng(c.seed, "QH_ORACLE/" + describe(g));
      for (const auto& [x, y] : inner_pairs(g, c.oracle_pairs, 0.95, rng)) {
        const double r = rho(g, x, y).value;
        const double k = qh_distance(g, x, y).value;
        const auto witness = [&] {
          json w = pair_json(x, y);
          w["k"] = k;
          w["rho"] = r;
          return w;
        };
        b.consider(0.5 * r - k - c.tolerance * r, witness);
        b.consider(k - r - c.tolerance * r, witness);
      }
    });
  }
  return out;
}

}  // namespace vangle::detail
