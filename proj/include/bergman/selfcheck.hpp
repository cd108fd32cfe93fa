#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bergman::cli {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestOptions {
    bool fast = false;
    std::uint64_t seed = 123456789;
    unsigned workers = 1;
};

/// Runs the invariant suites of all modules at reduced sample counts.
/// Output is deterministic for a fixed (seed, workers) pair.
std::vector<CheckResult> run_selftest(const SelftestOptions& opt);

}  // namespace bergman::cli
