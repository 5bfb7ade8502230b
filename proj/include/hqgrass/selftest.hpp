#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hqgrass {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    double worst = 0.0;      // worst residual observed
    double threshold = 0.0;  // criterion tolerance
    std::string detail;
};

struct SelfTestOptions {
    std::uint64_t seed = 1;
    int n = 8;                 // ambient quaternionic dimension
    double tol_inject = 0.0;   // > 0 overrides every criterion threshold
};

std::vector<CriterionResult> run_selftest(const SelfTestOptions& opt);

// prints one pass/fail line per criterion; returns true iff all passed
bool report_selftest(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace hqgrass
