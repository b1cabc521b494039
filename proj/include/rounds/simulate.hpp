#pragma once

#include <cstdint>
#include <map>
#include <string_view>

#include "rounds/model.hpp"
#include "rounds/random.hpp"

namespace rounds {

enum class GuessModel { parallel, serial };

std::string_view model_name(GuessModel m) noexcept;

/// How one parallel-model trial is realized. All three have the same
/// distribution; they differ in cost.
enum class SamplingMode {
    /// one uniform draw pushed through the inverse CDF of the maximum, O(1) per trial
    max_inverse,
    /// L geometric draws by inverse CDF, keep the largest
    per_letter,
    /// round-by-round Bernoulli guesses on the letters still wrong
    literal,
};

std::string_view sampling_mode_name(SamplingMode m) noexcept;

struct SimulationOptions {
    SamplingMode mode = SamplingMode::max_inverse;
    /// Worker threads. Results do not depend on this value.
    unsigned threads = 1;
};

/// Mergeable running statistics over integer round counts. Sums are kept as
/// exact integers, so merging is associative and commutative bit-for-bit.
class RoundAccumulator {
public:
    void add(std::uint64_t rounds);
    void merge(const RoundAccumulator& other);

    std::uint64_t count() const noexcept { return count_; }
    double mean() const;
    /// Sample standard deviation (n - 1 denominator); 0 for a single sample.
    double stddev() const;
    std::uint64_t min() const noexcept { return min_; }
    std::uint64_t max() const noexcept { return max_; }
    const std::map<std::uint64_t, std::uint64_t>& histogram() const noexcept { return histogram_; }

private:
    std::uint64_t count_ = 0;
    uint128 sum_ = 0;
    uint128 sum_sq_ = 0;
    std::uint64_t min_ = UINT64_MAX;
    std::uint64_t max_ = 0;
    std::map<std::uint64_t, std::uint64_t> histogram_;
};

struct SimulationSummary {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t min_rounds = 0;
    std::uint64_t max_rounds = 0;
    std::map<std::uint64_t, std::uint64_t> histogram;
    std::uint64_t seed = 0;
    GuessModel model = GuessModel::parallel;
    std::int64_t alphabet_size = 0;
    std::int64_t word_length = 0;
};

inline constexpr double default_serial_cap = 1e6;

/// Rounds until every letter is right when correct letters are kept.
/// Trial i uses Xoshiro256::substream(seed, i). Throws Error(invalid_trials)
/// for trials == 0.
SimulationSummary simulate_parallel(const ModelParams& params, std::uint64_t trials,
                                    std::uint64_t seed, const SimulationOptions& options = {});

/// Rounds until a whole fresh guess of the word is right, geometric with
/// success probability K^{-L}. Throws InfeasibleSerial when K^L > cap.
SimulationSummary simulate_serial(const ModelParams& params, std::uint64_t trials,
                                  std::uint64_t seed, double cap = default_serial_cap,
                                  const SimulationOptions& options = {});

/// log10 of the serial-model mean K^L.
double serial_mean_exact(const ModelParams& params);

struct GoodnessOfFit {
    double chi_square = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 0.0;
    int bins = 0;
};

inline constexpr std::uint64_t min_gof_trials = 10000;

/// Pearson chi-square of the histogram against round_pmf. Consecutive rounds
/// are pooled until each bin expects at least 5 counts and the upper tail is
/// pooled into the last bin. Errors: serial summaries (domain), fewer than
/// min_gof_trials trials (too_few_trials), a single occupied round or fewer
/// than two bins (degenerate_bins).
GoodnessOfFit empirical_cdf_check(const SimulationSummary& summary, const ModelParams& params);

/// Chi-square test that two histograms come from the same distribution.
/// Rounds are pooled until each pooled bin holds at least 10 combined counts.
GoodnessOfFit chi_square_homogeneity(const SimulationSummary& a, const SimulationSummary& b);

/// Upper tail of the chi-square distribution.
double chi_square_p_value(double statistic, int degrees_of_freedom);

}  // namespace rounds
