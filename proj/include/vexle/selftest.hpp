#pragma once

#include <string>
#include <vector>

namespace vexle {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail; // worst observed margins / counts, or the error text
    double seconds = 0;
};

/// Runs the full acceptance battery: fixed seeds, pinned grid sizes and
/// tolerances. Every criterion is evaluated even if earlier ones fail.
std::vector<CriterionResult> run_selftest();

/// One scenario of every kind; the determinism criterion runs this text at
/// parallelism 1 and 8 and requires byte-identical CSV.
std::string selftest_scenario_text();

/// Prints one line per criterion to stdout and returns the failure count.
int print_selftest(const std::vector<CriterionResult>& results);

} // namespace vexle
