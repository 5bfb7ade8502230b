// Acceptance sweep: every orbit-invariant claim checked by brute force at
// desk scale (n = 8), one pass/fail line per criterion.

#include <iostream>

#include "hqgrass/selftest.hpp"

int main(int argc, char** argv) {
    hqgrass::SelfTestOptions opt;
    opt.seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240809ull;
    opt.n = 8;
    const auto results = hqgrass::run_selftest(opt);
    const bool ok = hqgrass::report_selftest(results, std::cout);
    std::cout << (ok ? "acceptance: all criteria passed"
                     : "acceptance: FAILURES present")
              << std::endl;
    return ok ? 0 : 1;
}
