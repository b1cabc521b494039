#include "rounds/error.hpp"

#include <cstdio>

namespace rounds {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_alphabet: return "invalid-alphabet";
        case ErrorCode::invalid_word_length: return "invalid-word-length";
        case ErrorCode::invalid_tolerance: return "invalid-tolerance";
        case ErrorCode::invalid_trials: return "invalid-trials";
        case ErrorCode::size_limit: return "size-limit";
        case ErrorCode::domain: return "domain";
        case ErrorCode::pole: return "pole";
        case ErrorCode::infeasible_serial: return "infeasible-serial";
        case ErrorCode::too_few_trials: return "too-few-trials";
        case ErrorCode::degenerate_bins: return "degenerate-bins";
        case ErrorCode::usage: return "usage";
    }
    return "unknown";
}

namespace {

std::string infeasible_message(double log10_mean, double log10_cap) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "serial model needs about 10^%.6g rounds on average, above the cap 10^%.6g",
                  log10_mean, log10_cap);
    return buf;
}

}  // namespace

InfeasibleSerial::InfeasibleSerial(double log10_mean, double log10_cap)
    : Error(ErrorCode::infeasible_serial, infeasible_message(log10_mean, log10_cap)),
      log10_mean_(log10_mean) {}

}  // namespace rounds
