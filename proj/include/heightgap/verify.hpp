#pragma once

// The acceptance suite: one function per criterion, each returning a
// pass/fail result with details and its runtime.  Shared by the CLI
// `verify` subcommand and the acceptance test binary.

#include <string>
#include <vector>

#include "heightgap/report.hpp"

namespace heightgap {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double ms = 0;
    double budget_ms = 0;  // stated runtime budget; exceeding it fails the criterion
};

// suite: "all", "formal" (1-4, 10), "heights" (6-8), "constants" (5, 9)
std::vector<CriterionResult> run_acceptance(const std::string& suite, const RunConfig& cfg);

std::vector<std::string> acceptance_suite_names();

}  // namespace heightgap
