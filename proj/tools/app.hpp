#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "robustab/oracle.hpp"

namespace robustab::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitStable = 0,
  kExitUnstable = 1,
  kExitInputError = 2,
  kExitContradiction = 3,
};

/// Test seams. An empty decider means kharitonov_test.
struct Hooks {
  Decider decider;
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

/// Two-decimal root display, e.g. "-1.53-0.81i" or "-0.28".
std::string format_root(Complex z);

}  // namespace robustab::cli
