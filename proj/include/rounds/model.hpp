#pragma once

#include <cstdint>

namespace rounds {

/// Parameters of the guessing game: a word of `word_length` letters, each
/// drawn from an alphabet of `alphabet_size` letters.
///
/// `retention_prob` (q = 1 - 1/K) is the chance that a single guess for one
/// letter is wrong; `ratio` is X = K/(K-1) = 1/q. Both are derived from K and
/// never set independently. Construct through validate().
struct ModelParams {
    std::int64_t alphabet_size = 2;
    std::int64_t word_length = 1;
    double retention_prob = 0.5;
    double ratio = 2.0;
};

/// Number of completed guessing rounds.
struct RoundCount {
    std::uint64_t value = 0;

    constexpr RoundCount() = default;
    constexpr explicit RoundCount(std::uint64_t r) : value(r) {}
};

/// Throws Error(invalid_alphabet) for K < 2 and Error(invalid_word_length) for L < 1.
ModelParams validate(std::int64_t alphabet_size, std::int64_t word_length);

/// X = K/(K-1) for a real alphabet size K > 1. Throws Error(domain) otherwise.
double ratio_for_alphabet(double alphabet_size);

/// q^r, the probability that one letter is still wrong after r rounds.
double miss_prob(const ModelParams& params, RoundCount r);

/// P(all letters guessed within r rounds) = (1 - q^r)^L.
double round_cdf(const ModelParams& params, RoundCount r);

/// 1 - round_cdf, evaluated without forming the difference.
double round_survival(const ModelParams& params, RoundCount r);

/// P(exactly r rounds) = F(r) - F(r-1); r = 0 throws Error(domain).
double round_pmf(const ModelParams& params, RoundCount r);

}  // namespace rounds
