#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subshift {

inline constexpr const char* kToolVersion = "0.3.0";

// Runs one subcommand.  Artifacts go to --out when given, otherwise to out.
// Returns 0 on success, 1 on bad input, 2 when a cap was hit or a verdict
// stayed inconclusive (partial artifacts are still written).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subshift
