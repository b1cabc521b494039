#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rounds/gamma.hpp"

namespace rounds {

struct ValidationOptions {
    /// Reduced grids and trial counts; finishes in a few seconds.
    bool quick = false;
    /// Relative fault injected into the Gamma values the Gamma checks see.
    double perturb_gamma = 0.0;
    std::uint64_t seed = 20090101;
    /// Names of the checks to run; empty runs all of them.
    std::vector<std::string> only;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
    double wall_ms = 0.0;
};

/// Cross-route consistency checks: Knuth identity, survival series against
/// exact rationals, Gamma against closed-form moduli, periodicity and
/// amplitude of beta, the de Bruijn remainder, the headline parameters, the
/// floating-point instability exhibit, and simulation against the pmf.
/// Throws Error(usage) when `only` names an unknown check.
std::vector<CheckResult> run_validation(const ValidationOptions& options);

/// Check names in the order they run.
std::vector<std::string> validation_check_names();

}  // namespace rounds
