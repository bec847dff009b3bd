#include "vangle/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "vangle/errors.hpp"

namespace vangle {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNearEndpoint = 1e-12;
constexpr double kLog4 = 1.38629436111989061883;

bool near_endpoint(double r) {
  return (r > 0.0 && r < kNearEndpoint) || r > 1.0 - kNearEndpoint;
}

void check_open_unit(const Modulus& m, const char* what) {
  if (!(m.r > 0.0) || !(m.rc > 0.0) || !(m.r <= 1.0) || !(m.rc <= 1.0)) {
    throw DomainError(std::string(what) + ": argument must lie in (0,1)");
  }
}

void check_open_unit(double r, const char* what) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError(std::string(what) + ": argument must lie in (0,1), got " +
                      std::to_string(r));
  }
}

double require_k(const FunctionParams& p, LemmaFunction id) {
  if (!p.big_k) {
    throw UsageError(std::string(to_string(id)) + " requires parameter K");
  }
  if (!(*p.big_k > 0.0) || !std::isfinite(*p.big_k)) {
    throw DomainError(std::string(to_string(id)) + ": K must be positive");
  }
  return *p.big_k;
}

double require_l(const FunctionParams& p, LemmaFunction id) {
  if (!p.lipschitz) {
    throw UsageError(std::string(to_string(id)) + " requires parameter L");
  }
  if (!(*p.lipschitz >= 1.0) || !std::isfinite(*p.lipschitz)) {
    throw DomainError(std::string(to_string(id)) + ": L must be >= 1");
  }
  return *p.lipschitz;
}

double require_eps(const FunctionParams& p, LemmaFunction id) {
  if (!p.epsilon) {
    throw UsageError(std::string(to_string(id)) + " requires parameter eps");
  }
  if (!(*p.epsilon > 0.0 && *p.epsilon < 1.0)) {
    throw DomainError(std::string(to_string(id)) + ": eps must lie in (0,1)");
  }
  return *p.epsilon;
}

// arcsin r, i.e. arctan(r / r').
double arc(const Modulus& m) { return std::atan2(m.r, m.rc); }

// mu as a function of t = log(r / r').
Modulus modulus_from_logit(double t) {
  if (t < 0.0) {
    const double e = std::exp(t);
    const double den = std::sqrt(1.0 + e * e);
    return {e / den, 1.0 / den};
  }
  const double e = std::exp(-t);
  const double den = std::sqrt(1.0 + e * e);
  return {1.0 / den, e / den};
}

// Solves mu(r) = m for m >= pi/2, i.e. r <= 1/sqrt(2).
MuInverse solve_mu_lower_half(double m) {
  const auto mu_of = [](double t) {
    const Modulus q = modulus_from_logit(t);
    return kHalfPi * agm(1.0, q.rc) / agm(1.0, q.r);
  };
  // mu(r) = log(4/r) + O(r^2); beyond this the modulus underflows.
  constexpr double kUnderflowT = -740.0;

  double hi = 0.0;              // mu(hi) = pi/2 <= m
  double lo = std::log(1e-12);  // expanded until mu(lo) >= m
  while (mu_of(lo) < m) {
    hi = lo;
    lo -= 30.0;
    if (lo < kUnderflowT) {
      return {Modulus{std::exp(kLog4 - m), 1.0}, true};
    }
  }

  double t = std::clamp(kLog4 - m, lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const Modulus q = modulus_from_logit(t);
    const double a = agm(1.0, q.rc);
    const double f = kHalfPi * a / agm(1.0, q.r) - m;
    if (f > 0.0) {
      lo = t;
    } else if (f < 0.0) {
      hi = t;
    } else {
      break;
    }
    // dmu/dt = -agm(1, r')^2
    double next = t + f / (a * a);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 4.0 * kEps * std::max(1.0, std::abs(t)) ||
        hi - lo <= 4.0 * kEps * std::max(1.0, std::abs(t))) {
      break;
    }
  }
  const Modulus q = modulus_from_logit(t);
  return {q, q.r < std::numeric_limits<double>::min()};
}

}  // namespace

Modulus Modulus::from_r(double r) {
  return {r, std::sqrt(std::max(0.0, (1.0 - r) * (1.0 + r)))};
}

Modulus Modulus::from_complement(double rc) {
  return {std::sqrt(std::max(0.0, (1.0 - rc) * (1.0 + rc))), rc};
}

double agm(double a, double b) {
  if (a < 0.0 || b < 0.0) throw DomainError("agm: arguments must be non-negative");
  if (a == 0.0 || b == 0.0) return 0.0;
  for (int i = 0; i < 40; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= 2.0 * kEps * a) break;
  }
  return 0.5 * (a + b);
}

EllipticPair elliptic(const Modulus& m) {
  if (!(m.r >= 0.0) || !(m.rc > 0.0) || m.rc > 1.0) {
    throw DomainError("elliptic: modulus must lie in [0,1)");
  }
  // Gauss transform: E/K = 1 - sum_{n>=0} 2^{n-1} c_n^2.
  double a = 1.0;
  double b = m.rc;
  double c = m.r;
  double weight = 0.5;
  double sum = weight * c * c;
  for (int i = 0; i < 40 && c > kEps * a; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    weight *= 2.0;
    sum += weight * c * c;
  }
  const double k = kPi / (a + b);
  return {k, k * (1.0 - sum), near_endpoint(m.r)};
}

EllipticPair elliptic(double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw DomainError("elliptic: r must lie in [0,1), got " + std::to_string(r));
  }
  return elliptic(Modulus::from_r(r));
}

double elliptic_k(const Modulus& m) {
  if (!(m.r >= 0.0) || !(m.rc > 0.0)) {
    throw DomainError("elliptic_k: modulus must lie in [0,1)");
  }
  return kHalfPi / agm(1.0, m.rc);
}

double elliptic_k(double r) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw DomainError("elliptic_k: r must lie in [0,1), got " + std::to_string(r));
  }
  return elliptic_k(Modulus::from_r(r));
}

double grotzsch_mu(const Modulus& m) {
  check_open_unit(m, "grotzsch_mu");
  return kHalfPi * agm(1.0, m.rc) / agm(1.0, m.r);
}

double grotzsch_mu(double r) {
  check_open_unit(r, "grotzsch_mu");
  return grotzsch_mu(Modulus::from_r(r));
}

MuInverse grotzsch_mu_inv_modulus(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw DomainError("grotzsch_mu_inv: argument must be positive and finite");
  }
  if (m >= kHalfPi) return solve_mu_lower_half(m);
  // mu(r) mu(r') = pi^2 / 4
  MuInverse comp = solve_mu_lower_half(kPi * kPi / (4.0 * m));
  std::swap(comp.modulus.r, comp.modulus.rc);
  return comp;
}

double grotzsch_mu_inv(double m) { return grotzsch_mu_inv_modulus(m).modulus.r; }

Modulus phi_modulus(double big_k, const Modulus& r) {
  if (!(big_k > 0.0) || !std::isfinite(big_k)) {
    throw DomainError("phi: K must be positive");
  }
  return grotzsch_mu_inv_modulus(grotzsch_mu(r) / big_k).modulus;
}

double phi(double big_k, double r) {
  check_open_unit(r, "phi");
  return phi_modulus(big_k, Modulus::from_r(r)).r;
}

PhiPartials phi_partials(double big_k, double r) {
  check_open_unit(r, "phi_partials");
  const Modulus rm = Modulus::from_r(r);
  const Modulus s = phi_modulus(big_k, rm);
  const double ks = elliptic_k(s);
  const double kr = elliptic_k(rm);
  const double num = s.r * s.rc * s.rc * ks * ks;
  PhiPartials out;
  out.ds_dr = num / (big_k * r * rm.rc * rm.rc * kr * kr);
  out.ds_dk = 4.0 / (kPi * kPi * big_k * big_k) * num * grotzsch_mu(rm);
  return out;
}

double arth(const Modulus& m) {
  if (m.r < 0.5) return std::atanh(m.r);
  return std::log1p(m.r) - std::log(m.rc);
}

double vs3_r0() { return std::sin(1.0); }

Interval lemma_fn_domain(LemmaFunction id, const FunctionParams& params) {
  switch (id) {
    case LemmaFunction::Vs3F:
    case LemmaFunction::Vs3G:
      return {0.0, std::numeric_limits<double>::infinity()};
    case LemmaFunction::Lerho1F2:
      return {0.0, kPi / (8.0 * require_l(params, id))};
    case LemmaFunction::Lerho1F3:
      return {0.0, require_eps(params, id) / (4.0 * require_l(params, id))};
    default:
      return {0.0, 1.0};
  }
}

double lemma_fn(LemmaFunction id, const FunctionParams& params, const Modulus& m) {
  switch (id) {
    case LemmaFunction::Vs3F: {
      const double k = require_k(params, id);
      const Modulus r0 = Modulus::from_r(vs3_r0());
      const Modulus s0 = phi_modulus(k, r0);
      return std::pow(4.0, 1.0 - 1.0 / k) * arc(r0) / arc(s0);
    }
    case LemmaFunction::Vs3G: {
      const double k = require_k(params, id);
      const Modulus r0 = Modulus::from_r(vs3_r0());
      const Modulus s0 = phi_modulus(k, r0);
      const double ks = elliptic_k(s0);
      return 4.0 * grotzsch_mu(r0) / (kPi * kPi * kLog4) * s0.r / arc(s0) *
             (s0.rc * ks * ks);
    }
    case LemmaFunction::Lerho1F2: {
      const double l = require_l(params, id);
      if (!(m.r > 0.0 && m.r <= kPi / (8.0 * l))) {
        throw DomainError("LERHO1_F2: r must lie in (0, pi/(8L)]");
      }
      return std::sin(4.0 * l * m.r) / std::sin(m.r);
    }
    case LemmaFunction::Lerho1F3: {
      const double l = require_l(params, id);
      const double eps = require_eps(params, id);
      if (!(m.r > 0.0 && m.r <= eps / (4.0 * l))) {
        throw DomainError("LERHO1_F3: r must lie in (0, eps/(4L)]");
      }
      return std::atanh(4.0 * l * m.r) / std::atanh(m.r);
    }
    default:
      break;
  }

  check_open_unit(m, to_string(id).data());
  switch (id) {
    case LemmaFunction::Vs1F3:
      return std::sqrt(m.rc) * elliptic_k(m);
    case LemmaFunction::Vs1F5:
      return m.r / arc(m);
    case LemmaFunction::Vs1F6: {
      const EllipticPair ke = elliptic(m);
      return 2.0 * ke.e_value - m.rc * m.rc * ke.k_value;
    }
    case LemmaFunction::Lerho1F1:
      return arc(m) / std::log1p(m.r);
    default:
      break;
  }

  const double k = require_k(params, id);
  const Modulus s = phi_modulus(k, m);
  switch (id) {
    case LemmaFunction::Vs1F1:
      return std::pow(m.r, -1.0 / k) * s.r;
    case LemmaFunction::Vs1F2: {
      if (s.rc == 0.0) return 0.0;  // s' K(s)^2 -> 0 as s' -> 0
      const double ks = elliptic_k(s);
      const double kr = elliptic_k(m);
      return (s.rc * ks * ks) / (m.rc * kr * kr);
    }
    case LemmaFunction::Vs1F4:
      return s.r / m.r;
    case LemmaFunction::Vs2F1:
      return arc(s) / arc(m);
    case LemmaFunction::Vs2F2:
      return arc(s) / std::pow(arc(m), 1.0 / k);
    case LemmaFunction::BvG:
      return arth(s) / std::pow(arth(m), 1.0 / k);
    case LemmaFunction::RhoStarRatio: {
      const double a = arc(m);
      return 2.0 * arc(s) / std::max(a, std::pow(a, 1.0 / k));
    }
    default:
      break;
  }
  throw UsageError("lemma_fn: unhandled function id");
}

double lemma_fn(LemmaFunction id, const FunctionParams& params, double x) {
  switch (id) {
    case LemmaFunction::Vs3F:
    case LemmaFunction::Vs3G: {
      FunctionParams p = params;
      p.big_k = x;
      return lemma_fn(id, p, Modulus{});
    }
    case LemmaFunction::Lerho1F2:
    case LemmaFunction::Lerho1F3:
      return lemma_fn(id, params, Modulus{x, 1.0});
    default:
      check_open_unit(x, to_string(id).data());
      return lemma_fn(id, params, Modulus::from_r(x));
  }
}

namespace {
constexpr std::array<std::pair<LemmaFunction, std::string_view>, 15> kNames{{
    {LemmaFunction::Vs1F1, "VS1_F1"},
    {LemmaFunction::Vs1F2, "VS1_F2"},
    {LemmaFunction::Vs1F3, "VS1_F3"},
    {LemmaFunction::Vs1F4, "VS1_F4"},
    {LemmaFunction::Vs1F5, "VS1_F5"},
    {LemmaFunction::Vs1F6, "VS1_F6"},
    {LemmaFunction::Vs2F1, "VS2_F1"},
    {LemmaFunction::Vs2F2, "VS2_F2"},
    {LemmaFunction::Vs3F, "VS3_F"},
    {LemmaFunction::Vs3G, "VS3_G"},
    {LemmaFunction::BvG, "BV_G"},
    {LemmaFunction::Lerho1F1, "LERHO1_F1"},
    {LemmaFunction::Lerho1F2, "LERHO1_F2"},
    {LemmaFunction::Lerho1F3, "LERHO1_F3"},
    {LemmaFunction::RhoStarRatio, "RHO_STAR_RATIO"},
}};
}  // namespace

std::string_view to_string(LemmaFunction id) {
  for (const auto& [fn, name] : kNames) {
    if (fn == id) return name;
  }
  return "UNKNOWN";
}

std::optional<LemmaFunction> lemma_function_from_string(std::string_view name) {
  for (const auto& [fn, n] : kNames) {
    if (n == name) return fn;
  }
  return std::nullopt;
}

}  // namespace vangle
