// Suites that certify a scalar inequality or a monotonicity claim on a grid.

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vangle/specfun.hpp"
#include "verify_internal.hpp"

namespace vangle::detail {
namespace {

constexpr CheckKind kScalar = CheckKind::kScalarCertified;

std::string tag(const char* key, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, " [%s=%g]", key, v);
  return buf;
}

FunctionParams with_k(double k) { return {k, std::nullopt, std::nullopt}; }

std::function<double(double)> on_r(LemmaFunction id, FunctionParams p) {
  return [id, p](double r) { return lemma_fn(id, p, Modulus::from_r(r)); };
}

std::function<double(double)> near_zero(LemmaFunction id, FunctionParams p) {
  return [id, p](double d) { return lemma_fn(id, p, Modulus::from_r(d)); };
}

std::function<double(double)> near_one(LemmaFunction id, FunctionParams p) {
  return [id, p](double d) { return lemma_fn(id, p, Modulus::from_complement(d)); };
}

struct Claim {
  LemmaFunction id;
  int direction;      // +1 increasing, -1 decreasing
  double at_zero;     // limit as r -> 0+
  double at_one;      // limit as r -> 1-
};

void run_claim(std::vector<Check>& out, const VerifyConfig& c, const std::string& label,
               const Claim& claim, const FunctionParams& p, const std::string& suffix) {
  const std::vector<double> grid = monotone_grid(0.0, 1.0, c.monotone_spacing, false);
  run_check(out, label + (claim.direction > 0 ? " increasing" : " decreasing") + suffix, kScalar,
            [&](CheckBuilder& b) {
              check_monotone(b, grid, on_r(claim.id, p), claim.direction, c.monotone_tolerance);
            });
  run_check(out, label + " limit r->0+" + suffix, kScalar, [&](CheckBuilder& b) {
    check_limit(b, near_zero(claim.id, p), claim.at_zero, c.limit_tolerance);
  });
  run_check(out, label + " limit r->1-" + suffix, kScalar, [&](CheckBuilder& b) {
    check_limit(b, near_one(claim.id, p), claim.at_one, c.limit_tolerance);
  });
}

double four_pow(double k) { return std::pow(4.0, 1.0 - 1.0 / k); }

double arcsin_of(const Modulus& m) { return std::atan2(m.r, m.rc); }

}  // namespace

std::vector<std::pair<Modulus, double>> rho_grid(const VerifyConfig& c) {
  std::vector<std::pair<Modulus, double>> grid;
  for (int i = 1; i <= c.r_grid; ++i) {
    const Modulus m = Modulus::from_r(i / (c.r_grid + 1.0));
    grid.emplace_back(m, 2.0 * arth(m));
  }
  constexpr int kLogPoints = 2000;
  for (int i = 0; i < kLogPoints; ++i) {
    const double rho = std::pow(10.0, -8.0 + 11.0 * i / (kLogPoints - 1.0));
    grid.emplace_back(half_tanh(rho), rho);
  }
  grid.emplace_back(half_tanh(1.0), 1.0);
  return grid;
}

std::vector<Check> suite_vs1(const VerifyConfig& c) {
  std::vector<Check> out;
  const double inf = std::numeric_limits<double>::infinity();
  for (double k : nontrivial_k(c)) {
    const FunctionParams p = with_k(k);
    const std::string s = tag("K", k);
    run_claim(out, c, "F1", {LemmaFunction::Vs1F1, -1, four_pow(k), 1.0}, p, s);
    run_claim(out, c, "F2", {LemmaFunction::Vs1F2, -1, 1.0, 0.0}, p, s);
    run_claim(out, c, "F4", {LemmaFunction::Vs1F4, -1, inf, 1.0}, p, s);
  }
  run_claim(out, c, "F3", {LemmaFunction::Vs1F3, -1, kHalfPi, 0.0}, {}, "");
  run_claim(out, c, "F5", {LemmaFunction::Vs1F5, -1, 1.0, 2.0 / kPi}, {}, "");
  run_claim(out, c, "F6", {LemmaFunction::Vs1F6, +1, kHalfPi, 2.0}, {}, "");
  return out;
}

std::vector<Check> suite_vs2(const VerifyConfig& c) {
  std::vector<Check> out;
  const double inf = std::numeric_limits<double>::infinity();
  for (double k : nontrivial_k(c)) {
    const FunctionParams p = with_k(k);
    const std::string s = tag("K", k);
    run_claim(out, c, "F1", {LemmaFunction::Vs2F1, -1, inf, 1.0}, p, s);
    run_claim(out, c, "F2",
              {LemmaFunction::Vs2F2, -1, four_pow(k), std::pow(kHalfPi, 1.0 - 1.0 / k)}, p, s);
  }
  return out;
}

std::vector<Check> suite_vs3(const VerifyConfig& c) {
  std::vector<Check> out;
  const auto f = [](double k) { return lemma_fn(LemmaFunction::Vs3F, {}, k); };
  const auto g = [](double k) { return lemma_fn(LemmaFunction::Vs3G, {}, k); };
  std::vector<double> grid = monotone_grid(1.0, 8.0, c.monotone_spacing, true);
  grid.insert(grid.begin(), 1.0);

  run_check(out, "r0 = sin 1 ~ 0.841471", kScalar, [&](CheckBuilder& b) {
    const double r0 = vs3_r0();
    b.observe("r0", r0);
    b.consider(std::abs(r0 - 0.841471) - 1e-5, [&] { return json{{"r0", r0}}; });
  });
  run_check(out, "g(1) ~ 0.744915", kScalar, [&](CheckBuilder& b) {
    const double g1 = g(1.0);
    b.observe("g(1)", g1);
    b.consider(std::abs(g1 - 0.744915) - 1e-5, [&] { return json{{"g(1)", g1}}; });
  });
  run_check(out, "f(K) increasing on [1, 8]", kScalar, [&](CheckBuilder& b) {
    check_monotone(b, grid, f, +1, c.monotone_tolerance);
    b.observe("f(1)", f(1.0));
    b.observe("f(8)", f(8.0));
  });
  run_check(out, "max identity on [1, 8]", kScalar, [&](CheckBuilder& b) {
    const Modulus r0 = Modulus::from_r(vs3_r0());
    for (double k : grid) {
      const double lhs = arcsin_of(phi_modulus(k, r0)) / arcsin_of(r0);
      const double rhs = four_pow(k);
      b.consider(std::max(lhs, rhs) - rhs - 1e-12,
                 [&] { return json{{"K", k}, {"ratio", lhs}, {"4^(1-1/K)", rhs}}; });
    }
  });
  run_check(out, "g(K) < 1 on [1, 8]", kScalar, [&](CheckBuilder& b) {
    for (double k : grid) {
      const double v = g(k);
      b.consider(v - 1.0, [&] { return json{{"K", k}, {"g", v}}; });
    }
  });
  run_check(out, "g(K) decreasing on [1, 8]", kScalar,
            [&](CheckBuilder& b) { check_monotone(b, grid, g, -1, c.monotone_tolerance); });
  return out;
}

std::vector<Check> suite_schwarz_v(const VerifyConfig& c) {
  std::vector<Check> out;
  std::vector<Modulus> grid;
  for (int i = 1; i <= c.r_grid; ++i) grid.push_back(Modulus::from_r(i / (c.r_grid + 1.0)));
  for (double d : limit_offsets()) {
    grid.push_back(Modulus::from_r(d));
    grid.push_back(Modulus::from_complement(d));
  }
  struct Sup {
    double value = 0.0;
    Modulus at;
  };
  const auto sup_ratio = [&](double k) {
    Sup s;
    for (const Modulus& m : grid) {
      const double v = lemma_fn(LemmaFunction::RhoStarRatio, with_k(k), m);
      if (!(v <= s.value)) s = {v, m};
    }
    return s;
  };

  for (double k : c.k_list) {
    run_check(out, "sup ratio <= 2*4^(1-1/K)" + tag("K", k), kScalar, [&](CheckBuilder& b) {
      const Sup s = sup_ratio(k);
      const double bound = 2.0 * four_pow(k);
      b.observe("sup_ratio", s.value);
      b.observe("bound", bound);
      b.consider(s.value - bound - c.tolerance,
                 [&] { return json{{"r", s.at.r}, {"r_complement", s.at.rc}, {"ratio", s.value}}; });
    });
  }
  run_check(out, "sup ratio equals 2 at K=1", kScalar, [&](CheckBuilder& b) {
    const Sup s = sup_ratio(1.0);
    b.observe("sup_ratio", s.value);
    b.consider(std::abs(s.value - 2.0) - 1e-10, [&] { return json{{"r", s.at.r}, {"ratio", s.value}}; });
  });
  run_check(out, "sharpness near K=1 (informational)", kScalar, [&](CheckBuilder& b) {
    const double k = 1.0 + 1e-3;
    const Sup s = sup_ratio(k);
    const double bound = 2.0 * four_pow(k);
    b.observe("K", k);
    b.observe("sup_ratio", s.value);
    b.observe("bound", bound);
    b.observe("sup_over_bound", s.value / bound);
    b.informational();
  });
  return out;
}

std::vector<Check> suite_bv_trans(const VerifyConfig& c) {
  std::vector<Check> out;
  const auto grid = rho_grid(c);

  run_check(out, "c(1) = 1", kScalar, [&](CheckBuilder& b) {
    const double c1 = bv_constant(1.0);
    b.observe("c(1)", c1);
    b.consider(std::abs(c1 - 1.0) - 1e-10, [&] { return json{{"c(1)", c1}}; });
  });
  for (double k : c.k_list) {
    run_check(out, "sup ratio <= c(K)" + tag("K", k), kScalar, [&](CheckBuilder& b) {
      const double ck = bv_constant(k);
      double sup = 0.0;
      int skipped = 0;
      for (const auto& [m, rho] : grid) {
        const Modulus s = phi_modulus(k, m);
        if (s.rc == 0.0) {
          ++skipped;
          continue;
        }
        const double ratio = 2.0 * arth(s) / std::max(rho, std::pow(rho, 1.0 / k));
        sup = std::max(sup, ratio);
        b.consider(ratio - ck - c.tolerance, [&] { return json{{"rho", rho}, {"ratio", ratio}}; });
      }
      b.observe("c(K)", ck);
      b.observe("sup_ratio", sup);
      b.observe("skipped_complement_underflow", skipped);
    });
  }
  return out;
}

std::vector<Check> suite_bv_g_corrected(const VerifyConfig& c) {
  std::vector<Check> out;
  const std::vector<double> grid = monotone_grid(0.0, 1.0, c.monotone_spacing, false);
  const auto g1 = [](const Modulus& m) {
    const double kk = elliptic_k(m);
    return m.r * kk * kk / arth(m);
  };
  for (double k : nontrivial_k(c)) {
    const FunctionParams p = with_k(k);
    const std::string s = tag("K", k);
    run_check(out, "g increasing" + s, kScalar, [&](CheckBuilder& b) {
      check_monotone(b, grid, on_r(LemmaFunction::BvG, p), +1, c.monotone_tolerance);
    });
    run_check(out, "g limit r->0+" + s, kScalar, [&](CheckBuilder& b) {
      check_limit(b, near_zero(LemmaFunction::BvG, p), four_pow(k), c.limit_tolerance);
    });
    run_check(out, "g1(s) - g1(r) > 0" + s, kScalar, [&](CheckBuilder& b) {
      for (double r : grid) {
        const Modulus m = Modulus::from_r(r);
        const double diff = g1(phi_modulus(k, m)) - g1(m);
        const double violation = diff > 0.0 ? -diff : std::abs(diff) + 1e-300;
        b.consider(violation, [&] { return json{{"r", r}, {"difference", diff}}; });
      }
    });
    run_check(out, "phi_K(r)/r decreasing" + s, kScalar, [&](CheckBuilder& b) {
      check_monotone(b, grid, on_r(LemmaFunction::Vs1F4, p), -1, c.monotone_tolerance);
    });
  }
  run_check(out, "g1 increasing", kScalar, [&](CheckBuilder& b) {
    check_monotone(b, grid, [&](double r) { return g1(Modulus::from_r(r)); }, +1,
                   c.monotone_tolerance);
  });
  return out;
}

std::vector<Check> suite_lerho1(const VerifyConfig& c) {
  std::vector<Check> out;
  run_claim(out, c, "F1", {LemmaFunction::Lerho1F1, +1, 1.0, kPi / std::log(4.0)}, {}, "");
  for (double l : c.l_list) {
    const FunctionParams p{std::nullopt, l, std::nullopt};
    const double hi = kPi / (8.0 * l);
    const auto f2 = [&](double r) { return lemma_fn(LemmaFunction::Lerho1F2, p, r); };
    run_check(out, "F2 decreasing" + tag("L", l), kScalar, [&](CheckBuilder& b) {
      check_monotone(b, monotone_grid(0.0, hi, c.monotone_spacing, true), f2, -1,
                     c.monotone_tolerance);
    });
    run_check(out, "F2 limit r->0+" + tag("L", l), kScalar, [&](CheckBuilder& b) {
      check_limit(b, f2, 4.0 * l, c.limit_tolerance);
    });
    run_check(out, "F2 limit r->pi/(8L)" + tag("L", l), kScalar, [&](CheckBuilder& b) {
      check_limit(b, [&](double d) { return f2(hi * (1.0 - d)); }, 1.0 / std::sin(hi),
                  c.limit_tolerance);
    });
    for (double eps : c.eps_list) {
      const FunctionParams q{std::nullopt, l, eps};
      const double top = eps / (4.0 * l);
      const auto f3 = [&](double r) { return lemma_fn(LemmaFunction::Lerho1F3, q, r); };
      const std::string s = tag("L", l) + tag("eps", eps);
      run_check(out, "F3 increasing" + s, kScalar, [&](CheckBuilder& b) {
        check_monotone(b, monotone_grid(0.0, top, c.monotone_spacing, true), f3, +1,
                       c.monotone_tolerance);
      });
      run_check(out, "F3 limit r->0+" + s, kScalar, [&](CheckBuilder& b) {
        check_limit(b, f3, 4.0 * l, c.limit_tolerance);
      });
      run_check(out, "F3 limit r->eps/(4L)" + s, kScalar, [&](CheckBuilder& b) {
        check_limit(b, [&](double d) { return f3(top * (1.0 - d)); },
                    std::atanh(eps) / std::atanh(top), c.limit_tolerance);
      });
    }
  }
  return out;
}

std::vector<Check> suite_lerho2_chain(const VerifyConfig& c) {
  std::vector<Check> out;
  for (double l : c.l_list) {
    for (double eps : c.eps_list) {
      const double top = std::min(eps / (4.0 * l), std::sin(kPi / (8.0 * l)));
      const double ceps = std::atanh(eps) / std::atanh(eps / (4.0 * l));
      const std::vector<double> grid = monotone_grid(0.0, top, c.monotone_spacing, true);
      const std::string s = tag("L", l) + tag("eps", eps);
      run_check(out, "sin(4L arcsin r) <= 4Lr" + s, kScalar, [&](CheckBuilder& b) {
        for (double r : grid) {
          const double lhs = std::sin(4.0 * l * std::asin(r));
          b.consider(lhs - 4.0 * l * r - c.tolerance,
                     [&] { return json{{"r", r}, {"lhs", lhs}, {"rhs", 4.0 * l * r}}; });
        }
      });
      run_check(out, "artanh(4Lr) <= c(eps) artanh(r)" + s, kScalar, [&](CheckBuilder& b) {
        b.observe("c(eps)", ceps);
        for (double r : grid) {
          const double lhs = std::atanh(4.0 * l * r);
          const double rhs = ceps * std::atanh(r);
          b.consider(lhs - rhs - c.tolerance,
                     [&] { return json{{"r", r}, {"lhs", lhs}, {"rhs", rhs}}; });
        }
      });
    }
  }
  return out;
}

}  // namespace vangle::detail
