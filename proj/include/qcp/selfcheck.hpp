// Self-test battery: every module invariant at deterministic seeds, sized to
// finish in well under a minute. Each check reports pass/fail plus one
// representative numeric value; values are independent of thread count so
// self-test output is byte-reproducible.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcp {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;   // deterministic summary metric (error, margin, ...)
    double seconds = 0.0; // wall time; never written to CSV
    std::string detail;
};

// Runs all checks; when log is non-null a table row is printed per check.
std::vector<CheckResult> run_selfchecks(int threads, std::ostream* log = nullptr);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace qcp
