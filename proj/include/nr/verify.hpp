#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nr {

// One acceptance criterion: a named check with a pinned tolerance.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    int samples = 1000;       // flat-count property sample size (criterion 7)
    std::uint64_t seed = 42;  // seed for every randomized criterion
};

// Criterion ids checking values stated in the literature vs. seeded random /
// property-style suites.
std::vector<int> paper_suite();  // {1, 4, 5, 9, 10}
std::vector<int> random_suite(); // {2, 3, 6, 7, 8}
std::vector<int> all_suite();    // 1..10

CriterionResult run_criterion(int id, const VerifyOptions& opt);
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const VerifyOptions& opt);

} // namespace nr
