#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rounds {

enum class ErrorCode {
    invalid_alphabet,
    invalid_word_length,
    invalid_tolerance,
    invalid_trials,
    size_limit,
    domain,
    pole,
    infeasible_serial,
    too_few_trials,
    degenerate_bins,
    usage,
};

/// Stable kebab-case identifier used in machine-readable error objects.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when the serial (restart) model would need more than the configured
/// number of expected rounds. Carries the analytic mean as log10(K^L).
class InfeasibleSerial : public Error {
public:
    InfeasibleSerial(double log10_mean, double log10_cap);

    double log10_mean() const noexcept { return log10_mean_; }

private:
    double log10_mean_;
};

}  // namespace rounds
