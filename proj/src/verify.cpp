#include "ccx/verify.hpp"

namespace ccx {

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts) {
    (void)opts;
    return {};
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

} // namespace ccx
