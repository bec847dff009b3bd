// Acceptance run: one PASS/FAIL line per criterion, with the measured
// runtime held to the stated limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <string>

#include "vangle/geom.hpp"
#include "vangle/metrics.hpp"
#include "vangle/sampling.hpp"
#include "vangle/verify.hpp"

using namespace vangle;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = o.ok && s < limit_s;
  if (!ok) ++failures;
  std::printf("[%s] %2d. %s: %s (%.2f s, limit %.0f s)\n", ok ? "PASS" : "FAIL", id, title,
              o.detail.c_str(), s, limit_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome suite_outcome(const VerificationReport& r) {
  int passed = 0, warned = 0, failed = 0;
  std::string first_failure;
  for (const Check& c : r.checks) {
    if (c.status == CheckStatus::kPass) ++passed;
    if (c.status == CheckStatus::kWarn) ++warned;
    if (c.status == CheckStatus::kFail) {
      ++failed;
      if (first_failure.empty()) first_failure = "; first failure: " + c.name;
    }
  }
  return {r.passed(), std::string(to_string(r.suite)) + " " + std::to_string(passed) + " pass, " +
                          std::to_string(warned) + " info, " + std::to_string(failed) + " fail" +
                          first_failure};
}

double observed(const VerificationReport& r, std::string_view prefix, const char* key) {
  for (const Check& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0 && c.observed.contains(key)) {
      return c.observed[key].get<double>();
    }
  }
  return NAN;
}

}  // namespace

int main() {
  const VerifyConfig config;

  criterion(1, "closed forms", 1, [] {
    const double a = vam(UnitBall{2}, Point{0.5, 0}, Point{0, 0}).value;
    const double b = vam(UnitBall{2}, Point{0.5, 0}, Point{-0.5, 0}).value;
    const double ea = std::abs(a - kPi / 6), eb = std::abs(b - 2 * std::atan(0.5));
    return Outcome{ea <= 1e-10 && eb <= 1e-10,
                   fmt("|v - pi/6| = %.1e, |v - 2 arctan 0.5| = %.1e", ea, eb)};
  });

  criterion(2, "rho* <= v <= 2 rho* with sharp constant 2", 60, [&] {
    const VerificationReport r = run_suite(SuiteId::kMthm1, config);
    Outcome o = suite_outcome(r);
    o.detail += fmt(", boundary-family max v/rho* = %.8f",
                    observed(r, "ratio v/rho* exceeds 1.99", "max_ratio"));
    return o;
  });

  criterion(3, "Schwarz bound 2*4^(1-1/K) on the r-grid", 60, [&] {
    const VerificationReport r = run_suite(SuiteId::kSchwarzV, config);
    Outcome o = suite_outcome(r);
    o.detail += fmt(", sup at K=1: %.12f", observed(r, "sup ratio equals 2", "sup_ratio"));
    return o;
  });

  criterion(4, "r0, g(1) and the max identity", 10, [&] {
    const VerificationReport r = run_suite(SuiteId::kVs3, config);
    Outcome o = suite_outcome(r);
    o.detail += fmt(", r0 = %.6f, g(1) = %.6f", observed(r, "r0", "r0"), observed(r, "g(1)", "g(1)"));
    return o;
  });

  criterion(5, "c(K) bound and corrected monotone lemma", 30, [&] {
    const VerificationReport a = run_suite(SuiteId::kBvTrans, config);
    const VerificationReport b = run_suite(SuiteId::kBvGCorrected, config);
    const Outcome oa = suite_outcome(a), ob = suite_outcome(b);
    return Outcome{oa.ok && ob.ok, oa.detail + fmt(" (c(1) = %.12f); ", observed(a, "c(1)", "c(1)")) +
                                       ob.detail};
  });

  criterion(6, "distance-ratio bounds and sharpness families", 120,
            [&] { return suite_outcome(run_suite(SuiteId::kBcb, config)); });

  criterion(7, "v <= (pi/log 4) k", 300, [&] {
    Outcome o = suite_outcome(run_suite(SuiteId::kVk, config));
    o.detail += fmt(", c = pi/log 4 = %.5f", kPi / std::log(4.0));
    return o;
  });

  criterion(8, "quasihyperbolic solver oracles", 120,
            [&] { return suite_outcome(run_suite(SuiteId::kQhOracle, config)); });

  criterion(9, "plane reduction against full-boundary supremum", 120, [&] {
    double worst = 0.0;
    for (const Domain& g : {Domain{UnitBall{3}}, Domain{HalfSpace{3}}}) {
      Rng rng = make_rng(config.seed, "acceptance/plane reduction/" + describe(g));
      for (int i = 0; i < config.oracle_pairs; ++i) {
        const auto [x, y] = random_pair(g, rng);
        const double v = vam(g, x, y).value;
        const double s = stochastic_boundary_sup(g, x, y, config.oracle_samples, config.seed + i);
        worst = std::max(worst, std::abs(v - s));
      }
    }
    return Outcome{worst <= 1e-6, fmt("max |v - sup| over 2 x %.0f pairs = %.2e",
                                      config.oracle_pairs, worst)};
  });

  criterion(10, "radial map divergence", 5, [&] {
    const VerificationReport r = run_suite(SuiteId::kRadialDivergence, config);
    Outcome o = suite_outcome(r);
    o.detail += fmt(", ratio at r = 1e-3: %.4f", observed(r, "ratio at", "ratio"));
    return o;
  });

  criterion(11, "Moebius identities and factor-2 distortion", 60, [&] {
    Rng rng = make_rng(config.seed, "acceptance/moebius");
    double worst_t = 0.0, worst_a = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const int dim = 2 + i % 2;
      const Point a = random_point(UnitBall{dim}, rng);
      const auto [x, y] = random_pair(UnitBall{dim}, rng);
      worst_a = std::max(worst_a, norm(apply_moebius(ball_automorphism(a), a)));
      const double th = std::tanh(rho(UnitBall{dim}, x, y).value / 2);
      worst_t = std::max(worst_t, std::abs(norm(apply_moebius(ball_automorphism(x), y)) - th));
    }
    const Outcome o = suite_outcome(run_suite(SuiteId::kMoebiusVBilip, config));
    return Outcome{o.ok && worst_t <= 1e-10 && worst_a <= 1e-10,
                   fmt("max ||T_x(y)| - th(rho/2)| = %.1e, max |T_a(a)| = %.1e; ", worst_t,
                       worst_a) +
                       o.detail};
  });

  criterion(12, "verify --suite ALL", 900, [] {
    const std::string out = "acceptance_all.json";
    const std::string cmd = std::string("\"") + VANGLE_CLI_PATH +
                            "\" verify --suite ALL --format json --out " + out;
    const int status = std::system(cmd.c_str());
    std::ifstream f(out);
    if (!f) return Outcome{false, "no report written"};
    const nlohmann::json j = nlohmann::json::parse(f);
    std::size_t covered = 0;
    for (SuiteId id : all_suites()) {
      for (const auto& s : j["suites"]) covered += s == to_string(id) ? 1 : 0;
    }
    const bool ok = status == 0 && j["passed"] == true && covered == all_suites().size();
    return Outcome{ok, "exit " + std::to_string(status) + ", " + std::to_string(covered) + "/" +
                           std::to_string(all_suites().size()) + " suites, " +
                           std::to_string(j["checks"].size()) + " checks"};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
