#pragma once

// Reference implementations that share no code with the library: Boost.Math
// elliptic integrals, plain bisection, and brute-force boundary sampling.

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <boost/math/special_functions/ellint_rf.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

inline double ellk(double r) { return boost::math::ellint_1(r); }
inline double elle(double r) { return boost::math::ellint_2(r); }

inline double ellk_quadrature(double r) {
  auto f = [r](double t) { return 1.0 / std::sqrt(1.0 - r * r * std::sin(t) * std::sin(t)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kPi / 2, 15,
                                                                       1e-14);
}

// K from the complementary parameter via Carlson's R_F, so K(r') near r' = 1
// does not inherit the rounding of sqrt(1 - r^2).
inline double ellk_from_complement_sq(double rc2) {
  return boost::math::ellint_rf(0.0, rc2, 1.0);
}

inline double mu(double r) {
  return kPi / 2 * ellk_from_complement_sq(r * r) / ellk_from_complement_sq(1.0 - r * r);
}

// mu is decreasing, so bisection on (0, 1) converges unconditionally.
inline double mu_inv(double m) {
  double lo = 1e-300, hi = 1.0 - 1e-16;
  for (int i = 0; i < 400 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (mu(mid) > m ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double phi(double k, double r) { return mu_inv(mu(r) / k); }

inline double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(s);
}

// Angle at z from raw coordinates via acos of the clamped cosine.
inline double angle(const std::vector<double>& x, const std::vector<double>& z,
                    const std::vector<double>& y) {
  double dot = 0.0, a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dot += (x[i] - z[i]) * (y[i] - z[i]);
    a += (x[i] - z[i]) * (x[i] - z[i]);
    b += (y[i] - z[i]) * (y[i] - z[i]);
  }
  return std::acos(std::clamp(dot / std::sqrt(a * b), -1.0, 1.0));
}

// Maximizes f over [lo, hi]: dense scan, then golden-section search around
// the best few samples.
inline double scan_max(const std::function<double(double)>& f, double lo, double hi,
                       int samples) {
  std::vector<std::pair<double, double>> vals;
  const double h = (hi - lo) / samples;
  for (int i = 0; i <= samples; ++i) vals.emplace_back(f(lo + i * h), lo + i * h);
  std::partial_sort(vals.begin(), vals.begin() + 6, vals.end(), std::greater<>());
  double best = vals.front().first;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k = 0; k < 6; ++k) {
    double a = std::max(lo, vals[k].second - h), b = std::min(hi, vals[k].second + h);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
      if (fc > fd) {
        b = d, d = c, fd = fc, c = b - g * (b - a), fc = f(c);
      } else {
        a = c, c = d, fc = fd, d = a + g * (b - a), fd = f(d);
      }
    }
    best = std::max({best, fc, fd, f(a), f(b)});
  }
  return best;
}

// Visual angle in the unit disk by brute force over the circle.
inline double vam_disk(double x1, double x2, double y1, double y2) {
  return scan_max(
      [&](double t) { return angle({x1, x2}, {std::cos(t), std::sin(t)}, {y1, y2}); }, -kPi,
      kPi, 20000);
}

// Visual angle in the upper half-plane over a wide window of the real axis.
inline double vam_half_plane(double x1, double x2, double y1, double y2) {
  const double mid = 0.5 * (x1 + y1);
  const double w = 1e3 * (std::hypot(x1 - y1, x2 - y2) + x2 + y2);
  return scan_max([&](double s) { return angle({x1, x2}, {s, 0.0}, {y1, y2}); }, mid - w,
                  mid + w, 400000);
}

// Visual angle in a convex polygon (counterclockwise vertices) edge by edge.
inline double vam_polygon(const std::vector<std::pair<double, double>>& v, double x1,
                          double x2, double y1, double y2) {
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto [ax, ay] = v[i];
    const auto [bx, by] = v[(i + 1) % v.size()];
    best = std::max(best, scan_max(
                              [&](double t) {
                                return angle({x1, x2}, {ax + t * (bx - ax), ay + t * (by - ay)},
                                             {y1, y2});
                              },
                              0.0, 1.0, 4000));
  }
  return best;
}

inline double rho_ball(const std::vector<double>& x, const std::vector<double>& y) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
  const double nx = norm(x), ny = norm(y);
  return 2.0 * std::asinh(std::sqrt(d2) / std::sqrt((1 - nx * nx) * (1 - ny * ny)));
}

inline double rho_half(const std::vector<double>& x, const std::vector<double>& y) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
  return std::acosh(1.0 + d2 / (2.0 * x.back() * y.back()));
}

}  // namespace oracle
