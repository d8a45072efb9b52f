// Acceptance battery: every release criterion at its contractual tolerance,
// one pass/fail line per criterion. Exit 0 only when all pass.

#include <cstdio>
#include <cstdlib>

#include "apomet/checks.hpp"

int main(int argc, char** argv) {
    apomet::checks::RunConfig cfg;
    if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);

    const std::vector<apomet::checks::CheckResult> results = apomet::checks::acceptance(cfg);
    bool ok = true;
    for (const auto& r : results) {
        std::printf("%s %s worst=%.3e threshold=%.3e\n    %s\n", r.pass ? "PASS" : "FAIL",
                    r.id.c_str(), r.worst, r.threshold, r.detail.c_str());
        ok = ok && r.pass;
    }
    std::printf("%s (seed %llu)\n", ok ? "acceptance: all criteria passed" : "acceptance: FAILED",
                static_cast<unsigned long long>(cfg.seed));
    return ok ? 0 : 1;
}
