#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chaoskit {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

/// The full verification battery: ten structural checks with pinned
/// tolerances, exact where the grid algebra is exact and statistically
/// banded where Monte Carlo enters.
std::vector<CriterionResult> run_acceptance_suite(std::uint64_t seed);

}  // namespace chaoskit
