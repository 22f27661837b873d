#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blochlab {

// Built-in acceptance suite: twelve numbered end-to-end checks with pinned
// tolerances, each printing one PASS/FAIL line. `fast` shrinks the index
// ranges of the expensive grid-engine checks so the suite fits interactive
// use; the full suite is the release gate.

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    bool fast = false;
    int threads = 0; // <= 0: use ThreadPool::default_thread_count()
};

// Runs all criteria, streaming one result line per criterion to `log`.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace blochlab
