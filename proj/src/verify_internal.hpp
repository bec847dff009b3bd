#pragma once

#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "vangle/geom.hpp"
#include "vangle/specfun.hpp"
#include "vangle/verify.hpp"

namespace vangle::detail {

using nlohmann::json;

inline json point_json(const Point& p) {
  return std::vector<double>(p.coords().begin(), p.coords().end());
}

/// Accumulates the worst violation of one check. A violation is <= 0 when
/// the inequality holds; NaN counts as +inf.
class CheckBuilder {
 public:
  CheckBuilder(std::string name, CheckKind kind) {
    check_.name = std::move(name);
    check_.kind = kind;
    check_.observed = json::object();
  }

  void consider(double violation, const std::function<json()>& witness) {
    if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
    if (!seen_ || violation > check_.worst_violation) {
      seen_ = true;
      check_.worst_violation = violation;
      check_.witness = witness();
    }
  }

  void observe(const std::string& key, json value) { check_.observed[key] = std::move(value); }

  void error(const std::string& what) {
    errored_ = true;
    check_.witness = json{{"error", what}};
  }

  /// Informational checks report their numbers with status warn.
  void informational() { informational_ = true; }

  Check finish() {
    if (!seen_) check_.worst_violation = 0.0;
    if (!std::isfinite(check_.worst_violation)) {
      check_.worst_violation = std::numeric_limits<double>::max();
    }
    if (errored_) {
      check_.status = CheckStatus::kFail;
      check_.worst_violation = std::numeric_limits<double>::max();
    } else if (informational_) {
      check_.status = CheckStatus::kWarn;
    } else {
      check_.status = check_.worst_violation <= 0.0 ? CheckStatus::kPass : CheckStatus::kFail;
    }
    return std::move(check_);
  }

 private:
  Check check_;
  bool seen_ = false;
  bool errored_ = false;
  bool informational_ = false;
};

/// Runs `body` on a fresh builder; exceptions become a failed check.
template <class F>
void run_check(std::vector<Check>& out, std::string name, CheckKind kind, F&& body) {
  CheckBuilder b(std::move(name), kind);
  try {
    body(b);
  } catch (const std::exception& e) {
    b.error(e.what());
  }
  out.push_back(b.finish());
}

/// Points lo + k h strictly inside (lo, hi), plus hi itself when
/// `include_hi`. The step is the configured spacing, refined so that short
/// intervals still get 1000 points.
std::vector<double> monotone_grid(double lo, double hi, double spacing, bool include_hi);

/// Records -dir * (f(x_{k+1}) - f(x_k)) - tol over consecutive grid points.
void check_monotone(CheckBuilder& b, const std::vector<double>& grid,
                    const std::function<double(double)>& f, int dir, double tol);

/// Offsets used to approach an endpoint. Limits at r -> 1 are evaluated
/// through the complementary modulus r' = offset.
const std::vector<double>& limit_offsets();

/// Endpoint limit check along limit_offsets(): the distance to `target`
/// must shrink along the sequence and end within `tol`. An infinite target
/// requires growth past 1/tol instead.
void check_limit(CheckBuilder& b, const std::function<double(double)>& f_at_offset,
                 double target, double tol);

/// Suite implementations, grouped by source file.
std::vector<Check> suite_vs1(const VerifyConfig& c);
std::vector<Check> suite_vs2(const VerifyConfig& c);
std::vector<Check> suite_vs3(const VerifyConfig& c);
std::vector<Check> suite_schwarz_v(const VerifyConfig& c);
std::vector<Check> suite_bv_trans(const VerifyConfig& c);
std::vector<Check> suite_bv_g_corrected(const VerifyConfig& c);
std::vector<Check> suite_lerho1(const VerifyConfig& c);
std::vector<Check> suite_lerho2_chain(const VerifyConfig& c);

std::vector<Check> suite_cgqm_chain(const VerifyConfig& c);
std::vector<Check> suite_jk_corollary(const VerifyConfig& c);
std::vector<Check> suite_mthm1(const VerifyConfig& c);
std::vector<Check> suite_jrho_jk(const VerifyConfig& c);
std::vector<Check> suite_bcb(const VerifyConfig& c);
std::vector<Check> suite_vk(const VerifyConfig& c);
std::vector<Check> suite_red(const VerifyConfig& c);
std::vector<Check> suite_moebius_v_bilip(const VerifyConfig& c);
std::vector<Check> suite_qh_oracle(const VerifyConfig& c);

std::vector<Check> suite_radial_divergence(const VerifyConfig& c);
std::vector<Check> suite_dilatation_mthf(const VerifyConfig& c);

/// K values > 1 from the configuration (strict monotonicity needs K > 1).
std::vector<double> nontrivial_k(const VerifyConfig& c);

/// c(K) = 2 artanh(phi_K(tanh 1/2)).
double bv_constant(double big_k);

/// (th(rho/2), rho) over a uniform r-grid, a log grid of rho in [1e-8, 1e3]
/// and rho = 1.
std::vector<std::pair<Modulus, double>> rho_grid(const VerifyConfig& c);

/// tanh(rho/2) as a modulus pair, accurate for large rho.
Modulus half_tanh(double rho);

}  // namespace vangle::detail
