#pragma once

// The vangle command line: compute, verify, table and ball.

#include <iosfwd>
#include <string>
#include <vector>

namespace vangle {

/// Default seed variable consulted when --seed is absent.
inline constexpr const char* kSeedEnvVar = "VAM_SEED";

/// Runs the command line. Returns 0 on success, 1 when a verify suite fails
/// (or a solver does not converge), 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vangle
