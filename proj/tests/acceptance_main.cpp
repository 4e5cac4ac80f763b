// Acceptance suite runner: one PASS/FAIL line per criterion, nonzero exit
// if anything fails or a runtime budget is exceeded.

#include <cstdio>

#include "heightgap/verify.hpp"

int main() {
    using namespace heightgap;
    RunConfig cfg = RunConfig::from_env();
    auto results = run_acceptance("all", cfg);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d: %s  [%.0f ms, budget %.0f ms]\n",
                    r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.ms, r.budget_ms);
        std::printf("       %s\n", r.details.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "ALL ACCEPTANCE CRITERIA PASS" : "ACCEPTANCE FAILURES PRESENT");
    return all ? 0 : 1;
}
