#pragma once

// Named inequality suites. Each suite evaluates the scalar inequality that
// governs a claim (or the claim itself on concrete sample maps and random
// point pairs) and reports the worst violation per check.

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vangle/geom.hpp"

namespace vangle {

enum class SuiteId {
  kVs1,
  kVs2,
  kVs3,
  kSchwarzV,
  kCgqmChain,
  kBvTrans,
  kBvGCorrected,
  kJkCorollary,
  kMthm1,
  kJrhoJk,
  kBcb,
  kVk,
  kRed,
  kLerho1,
  kLerho2Chain,
  kMoebiusVBilip,
  kRadialDivergence,
  kDilatationMthf,
  kQhOracle,
  kAll,
};

std::string_view to_string(SuiteId id);
std::optional<SuiteId> suite_from_string(std::string_view name);
/// Every suite except kAll, in report order.
const std::vector<SuiteId>& all_suites();

enum class CheckStatus { kPass, kFail, kWarn };
std::string_view to_string(CheckStatus s);

/// scalar-certified: the governing scalar inequality on a grid.
/// sample-map: the statement itself on concrete points and maps.
enum class CheckKind { kScalarCertified, kSampleMap };
std::string_view to_string(CheckKind k);

struct Check {
  std::string name;
  CheckKind kind = CheckKind::kScalarCertified;
  CheckStatus status = CheckStatus::kPass;
  double worst_violation = 0.0;  // <= 0 on pass
  nlohmann::json witness;        // inputs at the worst violation
  nlohmann::json observed;       // headline values (sup ratio, constants)
};

struct VerifyConfig {
  std::uint64_t seed = 20130901;
  int r_grid = 10000;
  double monotone_spacing = 1e-3;
  double monotone_tolerance = 1e-9;
  int pair_count = 10000;
  int qh_pair_count = 1000;
  int map_pair_count = 1000;
  int polygon_count = 10;
  int oracle_pairs = 100;
  int oracle_samples = 100000;
  double tolerance = 1e-8;
  double limit_tolerance = 1e-3;
  std::vector<double> k_list = {1.0, 1.25, 1.5, 2.0, 4.0};
  std::vector<double> l_list = {1.0, 2.0, 4.0};
  std::vector<double> eps_list = {0.1, 0.5, 0.9};
};

struct VerificationReport {
  SuiteId suite = SuiteId::kAll;
  std::string statement;
  VerifyConfig params;
  std::vector<Check> checks;
  std::vector<std::string> suites;  // suites covered (ALL only)
  double seconds = 0.0;

  bool passed() const;
};

/// Runs a suite. Exceptions thrown while evaluating a check become failed
/// checks. Throws UsageError for invalid configurations.
VerificationReport run_suite(SuiteId id, const VerifyConfig& config = {});

/// {suite, statement, params, checks: [{name, kind, status, worst_violation,
/// witness, observed}], passed}; ALL adds "suites". Timing is left out so
/// that reports are byte-identical across runs.
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const VerifyConfig& config);

/// Supremum of angle(x, z, y) over `samples` random boundary points of a
/// ball or half-space followed by compass-search refinement of the best
/// few. Used to validate the plane reduction in dimension >= 3.
double stochastic_boundary_sup(const Domain& g, const Point& x, const Point& y, int samples,
                               std::uint64_t seed);

}  // namespace vangle
