#pragma once

#include <string>
#include <vector>

namespace deltaspec::validate {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured values, incl. the recorded adjudications
};

struct ValidationOptions {
    std::string only;  // prefix filter, empty = run everything
    bool inject_lambda_sign_fault = false;  // test hook (deliberate failure path)
};

// Runs the cross-validation suite: closed forms vs sums-over-states vs numeric
// extraction vs the grid oracle, plus the property checks. One result per check.
std::vector<CheckResult> run_validation(const ValidationOptions& opts = {});

}  // namespace deltaspec::validate
