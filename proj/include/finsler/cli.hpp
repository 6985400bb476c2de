#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "finsler/config.hpp"
#include "finsler/report.hpp"

namespace finsler::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInvalid = 2;

/// Runs the property suite (homogeneity, Euler identity, strong convexity,
/// positivity of F^2 and, for convolutions, the positivity condition) over
/// `count` samples drawn with `seed`.
report::CheckReport run_check(const RunConfig& config, std::uint64_t seed,
                              std::size_t count);

/// Entry point shared by the `finsler` binary and the tests. `args` excludes
/// the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finsler::cli
