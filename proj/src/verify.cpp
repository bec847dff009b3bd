#include "vangle/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "vangle/errors.hpp"
#include "vangle/sampling.hpp"
#include "vangle/specfun.hpp"
#include "verify_internal.hpp"

namespace vangle {
namespace detail {

std::vector<double> monotone_grid(double lo, double hi, double spacing, bool include_hi) {
  const double h = std::min(spacing, (hi - lo) / 1000.0);
  std::vector<double> out;
  for (long k = 1;; ++k) {
    const double x = lo + static_cast<double>(k) * h;
    if (x >= hi - 0.5 * h) break;
    out.push_back(x);
  }
  if (include_hi) out.push_back(hi);
  return out;
}

void check_monotone(CheckBuilder& b, const std::vector<double>& grid,
                    const std::function<double(double)>& f, int dir, double tol) {
  double prev = f(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    const double lo = grid[i - 1];
    const double hi = grid[i];
    b.consider(-dir * (cur - prev) - tol, [&] {
      return json{{"r_lo", lo}, {"r_hi", hi}, {"f_lo", prev}, {"f_hi", cur}};
    });
    prev = cur;
  }
  b.observe("grid_points", grid.size());
}

const std::vector<double>& limit_offsets() {
  static const std::vector<double> offsets = {1e-6, 1e-12, 1e-24, 1e-48, 1e-96, 1e-192};
  return offsets;
}

void check_limit(CheckBuilder& b, const std::function<double(double)>& f_at_offset,
                 double target, double tol) {
  const auto& offsets = limit_offsets();
  std::vector<double> values;
  for (double d : offsets) values.push_back(f_at_offset(d));
  b.observe("value_at_1e-6", values.front());
  if (std::isinf(target)) {
    b.observe("target", "inf");
    b.consider(1.0 / tol - values.back(),
               [&] { return json{{"offset", offsets.back()}, {"value", values.back()}}; });
    for (std::size_t i = 1; i < values.size(); ++i) {
      b.consider(values[i - 1] - values[i], [&] {
        return json{{"offset", offsets[i]}, {"value", values[i]}, {"previous", values[i - 1]}};
      });
    }
    return;
  }
  b.observe("target", target);
  std::vector<double> err;
  for (double v : values) err.push_back(std::abs(v - target));
  for (std::size_t i = 0; i < err.size(); ++i) {
    if (err[i] <= tol) {
      b.observe("first_offset_within_tolerance", offsets[i]);
      break;
    }
  }
  b.consider(err.back() - tol,
             [&] { return json{{"offset", offsets.back()}, {"value", values.back()}}; });
  for (std::size_t i = 1; i < err.size(); ++i) {
    b.consider(err[i] - err[i - 1] - 1e-12, [&] {
      return json{{"offset", offsets[i]}, {"error", err[i]}, {"previous_error", err[i - 1]}};
    });
  }
}

std::vector<double> nontrivial_k(const VerifyConfig& c) {
  std::vector<double> out;
  for (double k : c.k_list) {
    if (k > 1.0) out.push_back(k);
  }
  return out;
}

double bv_constant(double big_k) {
  return 2.0 * arth(phi_modulus(big_k, Modulus::from_r(std::tanh(0.5))));
}

Modulus half_tanh(double rho) {
  const double h = 0.5 * rho;
  const double c = std::cosh(h);
  return {std::tanh(h), std::isfinite(c) ? 1.0 / c : 2.0 * std::exp(-h)};
}

}  // namespace detail

namespace {

using detail::json;

struct SuiteInfo {
  SuiteId id;
  std::string_view name;
  std::string_view statement;
  std::vector<Check> (*run)(const VerifyConfig&);
};

const std::vector<SuiteInfo>& suite_table() {
  static const std::vector<SuiteInfo> table = {
      {SuiteId::kVs1, "VS1",
       "r^{-1/K} phi_K(r), s'K(s)^2/(r'K(r)^2), sqrt(r')K(r), phi_K(r)/r and r/arcsin(r) are "
       "strictly decreasing and 2E(r) - r'^2 K(r) is strictly increasing on (0,1), with the "
       "stated endpoint limits",
       detail::suite_vs1},
      {SuiteId::kVs2, "VS2",
       "arcsin(s)/arcsin(r) decreases from infinity to 1 and arcsin(s)/arcsin(r)^{1/K} "
       "decreases from 4^{1-1/K} to (pi/2)^{1-1/K}, s = phi_K(r)",
       detail::suite_vs2},
      {SuiteId::kVs3, "VS3",
       "f(K) = 4^{1-1/K} arcsin(r0)/arcsin(phi_K(r0)) is increasing for r0 = sin 1, so "
       "max{4^{1-1/K}, arcsin(s0)/arcsin(r0)} = 4^{1-1/K}; g(1) ~ 0.744915",
       detail::suite_vs3},
      {SuiteId::kSchwarzV, "SCHWARZ_V",
       "v(f(x),f(y)) <= 2 4^{1-1/K} max{v(x,y), v(x,y)^{1/K}} for K-quasiregular self-maps "
       "of the disk, via the governing ratio 2 arctan(s/s')/max{arctan(r/r'), "
       "arctan(r/r')^{1/K}}",
       detail::suite_schwarz_v},
      {SuiteId::kCgqmChain, "CGQM_CHAIN",
       "th(rho(f(x),f(y))/2) <= phi_K(th(rho(x,y)/2)) for K-quasiregular self-maps of the disk",
       detail::suite_cgqm_chain},
      {SuiteId::kBvTrans, "BV_TRANS",
       "rho(f(x),f(y)) <= c(K) max{rho, rho^{1/K}} with c(K) = 2 artanh(phi_K(th 1/2)), c(1) = 1",
       detail::suite_bv_trans},
      {SuiteId::kBvGCorrected, "BV_G_CORRECTED",
       "g(r) = artanh(phi_K(r))/artanh(r)^{1/K} is strictly increasing for K > 1, and "
       "s K(s)^2/artanh(s) - r K(r)^2/artanh(r) > 0",
       detail::suite_bv_g_corrected},
      {SuiteId::kJkCorollary, "JK_COROLLARY",
       "j and k distort by at most 2c(K) max{m, m^{1/K}} under K-quasiregular self-maps of "
       "the disk",
       detail::suite_jk_corollary},
      {SuiteId::kMthm1, "MTHM1",
       "rho*(x,y) <= v(x,y) <= 2 rho*(x,y) on balls and half-spaces, with 2 best possible",
       detail::suite_mthm1},
      {SuiteId::kJrhoJk, "JRHO_JK", "rho/2 <= j <= rho and rho/2 <= k <= rho in the unit ball",
       detail::suite_jrho_jk},
      {SuiteId::kBcb, "BCB",
       "arcsin(t/(t+2)) <= v(x,y) <= 2 arcsin(t/sqrt(4+t^2)), t = |x-y|/min{d(x),d(y)}, on "
       "convex domains, both bounds sharp in the half-plane",
       detail::suite_bcb},
      {SuiteId::kVk, "VK", "v <= (pi/log 4) k on proper convex domains", detail::suite_vk},
      {SuiteId::kRed, "RED",
       "v-spheres about the origin are Euclidean spheres of radius sin M whose v-diameter "
       "2 arcsin(|x|/sqrt(1+|x|^2)) is less than 2M",
       detail::suite_red},
      {SuiteId::kLerho1, "LERHO1",
       "arcsin(r)/log(1+r) increases to pi/log 4; sin(4Lr)/sin(r) decreases on (0, pi/(8L)]; "
       "artanh(4Lr)/artanh(r) increases on (0, eps/(4L)]",
       detail::suite_lerho1},
      {SuiteId::kLerho2Chain, "LERHO2_CHAIN",
       "for th(rho/2) <= min{eps/(4L), sin(pi/(8L))}: sin(4L arcsin r) <= 4Lr and "
       "artanh(4Lr) <= c(eps) artanh(r), c(eps) = artanh(eps)/artanh(eps/(4L))",
       detail::suite_lerho2_chain},
      {SuiteId::kMoebiusVBilip, "MOEBIUS_V_BILIP",
       "Moebius maps between balls and half-spaces change v by at most a factor 2 and "
       "preserve rho",
       detail::suite_moebius_v_bilip},
      {SuiteId::kRadialDivergence, "RADIAL_DIVERGENCE",
       "the radial map z |z|^{a-1} is quasiconformal but not v-bilipschitz: its v-ratio "
       "diverges like |x|^{-(1-a)}",
       detail::suite_radial_divergence},
      {SuiteId::kDilatationMthf, "DILATATION_MTHF",
       "an L-bilipschitz map in the visual angle metric has linear dilatation at most 4L^2",
       detail::suite_dilatation_mthf},
      {SuiteId::kQhOracle, "QH_ORACLE",
       "the polyline solver reproduces k = rho in the half-space, k(0, t e1) = log(1/(1-t)) in "
       "the ball, and rho/2 <= k <= rho in the ball",
       detail::suite_qh_oracle},
  };
  return table;
}

const SuiteInfo& info(SuiteId id) {
  for (const SuiteInfo& s : suite_table()) {
    if (s.id == id) return s;
  }
  throw UsageError("unknown suite");
}

void validate(const VerifyConfig& c) {
  const auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw UsageError(std::string("verify: ") + what + " must be positive");
    }
  };
  positive(c.monotone_spacing, "monotone spacing");
  positive(c.monotone_tolerance, "monotone tolerance");
  positive(c.tolerance, "tolerance");
  positive(c.limit_tolerance, "limit tolerance");
  for (int n : {c.r_grid, c.pair_count, c.qh_pair_count, c.map_pair_count, c.polygon_count,
                c.oracle_pairs, c.oracle_samples}) {
    if (n < 1) throw UsageError("verify: grid sizes and sample counts must be positive");
  }
  if (c.k_list.empty() || c.l_list.empty() || c.eps_list.empty()) {
    throw UsageError("verify: K, L and epsilon lists must be non-empty");
  }
  for (double k : c.k_list) {
    if (!(k >= 1.0) || !std::isfinite(k)) throw UsageError("verify: K values must be >= 1");
  }
  for (double l : c.l_list) {
    if (!(l >= 1.0) || !std::isfinite(l)) throw UsageError("verify: L values must be >= 1");
  }
  for (double e : c.eps_list) {
    if (!(e > 0.0 && e < 1.0)) throw UsageError("verify: epsilon values must lie in (0, 1)");
  }
}

// Visual angle at z between raw vectors, in Kahan's stable form.
double raw_angle(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& z) {
  const std::size_t n = z.size();
  double nu = 0.0;
  double nw = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    nu += (x[i] - z[i]) * (x[i] - z[i]);
    nw += (y[i] - z[i]) * (y[i] - z[i]);
  }
  nu = std::sqrt(nu);
  nw = std::sqrt(nw);
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = nw * (x[i] - z[i]);
    const double q = nu * (y[i] - z[i]);
    a += (p - q) * (p - q);
    b += (p + q) * (p + q);
  }
  return 2.0 * std::atan2(std::sqrt(a), std::sqrt(b));
}

}  // namespace

std::string_view to_string(SuiteId id) {
  if (id == SuiteId::kAll) return "ALL";
  return info(id).name;
}

std::optional<SuiteId> suite_from_string(std::string_view name) {
  if (name == "ALL") return SuiteId::kAll;
  for (const SuiteInfo& s : suite_table()) {
    if (s.name == name) return s.id;
  }
  return std::nullopt;
}

const std::vector<SuiteId>& all_suites() {
  static const std::vector<SuiteId> ids = [] {
    std::vector<SuiteId> out;
    for (const SuiteInfo& s : suite_table()) out.push_back(s.id);
    return out;
  }();
  return ids;
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kWarn:
      return "warn";
  }
  return "fail";
}

std::string_view to_string(CheckKind k) {
  return k == CheckKind::kScalarCertified ? "scalar-certified" : "sample-map";
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const Check& c) { return c.status == CheckStatus::kFail; });
}

VerificationReport run_suite(SuiteId id, const VerifyConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.suite = id;
  report.params = config;
  if (id == SuiteId::kAll) {
    report.statement = "every suite";
    for (const SuiteInfo& s : suite_table()) {
      report.suites.emplace_back(s.name);
      for (Check& c : s.run(config)) {
        c.name = std::string(s.name) + "/" + c.name;
        report.checks.push_back(std::move(c));
      }
    }
  } else {
    const SuiteInfo& s = info(id);
    report.statement = s.statement;
    report.checks = s.run(config);
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const VerifyConfig& c) {
  return {{"seed", c.seed},
          {"r_grid", c.r_grid},
          {"monotone_spacing", c.monotone_spacing},
          {"monotone_tolerance", c.monotone_tolerance},
          {"pair_count", c.pair_count},
          {"qh_pair_count", c.qh_pair_count},
          {"map_pair_count", c.map_pair_count},
          {"polygon_count", c.polygon_count},
          {"oracle_pairs", c.oracle_pairs},
          {"oracle_samples", c.oracle_samples},
          {"tolerance", c.tolerance},
          {"limit_tolerance", c.limit_tolerance},
          {"k_list", c.k_list},
          {"l_list", c.l_list},
          {"eps_list", c.eps_list}};
}

nlohmann::json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"kind", std::string(to_string(c.kind))},
                      {"status", std::string(to_string(c.status))},
                      {"worst_violation", c.worst_violation},
                      {"witness", c.witness},
                      {"observed", c.observed}});
  }
  json out = {{"suite", std::string(to_string(r.suite))},
              {"statement", r.statement},
              {"params", to_json(r.params)},
              {"checks", checks},
              {"passed", r.passed()}};
  if (r.suite == SuiteId::kAll) out["suites"] = r.suites;
  return out;
}

double stochastic_boundary_sup(const Domain& g, const Point& x, const Point& y, int samples,
                               std::uint64_t seed) {
  const bool ball = std::holds_alternative<UnitBall>(g);
  if (!ball && !std::holds_alternative<HalfSpace>(g)) {
    throw UnsupportedDomainError("stochastic_boundary_sup: ball or half-space only");
  }
  require_interior(g, x, "stochastic_boundary_sup");
  require_interior(g, y, "stochastic_boundary_sup");
  if (samples < 1) throw UsageError("stochastic_boundary_sup: samples must be positive");

  const int n = dimension(g);
  const std::vector<double> xs(x.coords().begin(), x.coords().end());
  const std::vector<double> ys(y.coords().begin(), y.coords().end());
  const double scale = distance(x, y) + (ball ? 0.0 : x.last() + y.last());
  Rng rng = make_rng(seed, "stochastic_boundary_sup");
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Projects a candidate onto the boundary.
  const auto project = [&](std::vector<double>& z) {
    if (ball) {
      double r = 0.0;
      for (double c : z) r += c * c;
      r = std::sqrt(r);
      for (double& c : z) c /= r;
    } else {
      z.back() = 0.0;
    }
  };

  constexpr std::size_t kKeep = 8;
  std::vector<std::pair<double, std::vector<double>>> best;
  std::vector<double> z(static_cast<std::size_t>(n));
  for (int s = 0; s < samples; ++s) {
    if (ball) {
      for (double& c : z) c = gauss(rng);
    } else {
      const bool heavy = (s % 2) == 1;
      for (int i = 0; i + 1 < n; ++i) {
        const double mid = 0.5 * (xs[static_cast<std::size_t>(i)] + ys[static_cast<std::size_t>(i)]);
        const double u = unit(rng);
        z[static_cast<std::size_t>(i)] =
            mid + scale * (heavy ? std::tan(kPi * (u - 0.5)) : 6.0 * (u - 0.5));
      }
    }
    project(z);
    const double a = raw_angle(xs, ys, z);
    if (best.size() < kKeep || a > best.back().first) {
      if (best.size() == kKeep) best.pop_back();
      best.emplace_back(a, z);
      std::sort(best.begin(), best.end(),
                [](const auto& l, const auto& r) { return l.first > r.first; });
    }
  }

  double sup = 0.0;
  const int free_dims = ball ? n : n - 1;
  for (auto& [value, zc] : best) {
    double step = ball ? 0.05 : 0.05 * scale;
    const double stop = ball ? 1e-12 : 1e-12 * scale;
    while (step > stop) {
      bool improved = false;
      for (int i = 0; i < free_dims; ++i) {
        for (double sign : {1.0, -1.0}) {
          std::vector<double> trial = zc;
          trial[static_cast<std::size_t>(i)] += sign * step;
          project(trial);
          const double a = raw_angle(xs, ys, trial);
          if (a > value) {
            value = a;
            zc = std::move(trial);
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    sup = std::max(sup, value);
  }
  return sup;
}

}  // namespace vangle
