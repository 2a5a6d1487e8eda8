#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ccx {

enum class VerifyLevel { kQuick, kFull };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    VerifyLevel level = VerifyLevel::kFull;
    int threads = 0;
    std::uint64_t seed = 0;   // the battery derives all randomness from this
    std::ostream* log = nullptr; // progress lines, one per criterion
};

// Runs the full acceptance battery; one result per criterion.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace ccx
