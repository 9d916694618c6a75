// Acceptance suite: runs every criterion and prints one pass/fail line per
// criterion.  Exit status is nonzero when any criterion fails.

#include <cstdio>

#include "adicpl/selftest.hpp"

int main(int argc, char** argv) {
    uint64_t seed = 20240915;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    int failed = 0;
    adicpl::run_acceptance(seed, [&](const adicpl::CriterionResult& r) {
        std::printf("%s  criterion %2d: %s (%s) [%.2fs]\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        std::fflush(stdout);
        if (!r.pass) ++failed;
    });
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
