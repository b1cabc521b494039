#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rounds/exact.hpp"
#include "rounds/report.hpp"
#include "rounds/simulate.hpp"

namespace rounds {

/// Geometric grid of word lengths: `points` values from `lo` to `hi`
/// inclusive, rounded to integers, duplicates dropped.
struct LengthRange {
    std::int64_t lo = 1;
    std::int64_t hi = 1;
    int points = 1;
};

std::vector<std::int64_t> expand_range(const LengthRange& range);

/// Everything one CLI invocation needs. A params file holds the same keys as
/// `config_to_json` produces, so a report's config_echo can be replayed.
struct RunConfig {
    std::string command;
    std::vector<std::int64_t> alphabet_sizes{2};
    std::vector<std::int64_t> word_lengths{2};
    std::optional<LengthRange> length_range;
    std::vector<Method> methods{Method::survival_series, Method::asymptotic, Method::simple};
    double tol = 1e-12;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 20090101;
    OutputFormat format = OutputFormat::table;
    std::optional<std::string> out;
    std::int64_t cap = default_exact_cap;
    std::string m = "2";
    std::int64_t n = 100;
    GuessModel model = GuessModel::parallel;
    SamplingMode sampling = SamplingMode::max_inverse;
    unsigned threads = 1;
    double serial_cap = default_serial_cap;
    std::int64_t max_cells = 10000;
    bool quick = false;
    double perturb_gamma = 0.0;
    std::vector<std::string> checks;
};

Json config_to_json(const RunConfig& config);

/// Applies every key of `patch` on top of `base`. Lists may be JSON arrays or
/// comma-separated strings, numbers may be JSON numbers or strings. Unknown
/// keys and malformed values throw Error(usage).
RunConfig apply_config(RunConfig base, const Json& patch);

/// Runs one command. Throws Error for invalid parameters; the report's
/// exit_code is 4 when a validation check failed and 0 otherwise.
Report run_command(const RunConfig& config);

/// Parses argv (without the program name), runs the command and writes the
/// rendered report. Returns 0 on success, 2 on usage errors, 3 on domain
/// errors and 4 when validation fails. Errors go to `err` as a JSON object
/// {"error": {"code", "message", ...}}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rounds
