#include "rounds/model.hpp"

#include <cmath>
#include <string>

#include "rounds/error.hpp"

namespace rounds {

ModelParams validate(std::int64_t alphabet_size, std::int64_t word_length) {
    if (alphabet_size < 2) {
        throw Error(ErrorCode::invalid_alphabet,
                    "alphabet size must be at least 2, got " + std::to_string(alphabet_size));
    }
    if (word_length < 1) {
        throw Error(ErrorCode::invalid_word_length,
                    "word length must be at least 1, got " + std::to_string(word_length));
    }
    ModelParams p;
    p.alphabet_size = alphabet_size;
    p.word_length = word_length;
    const auto k = static_cast<double>(alphabet_size);
    p.retention_prob = (k - 1.0) / k;
    p.ratio = k / (k - 1.0);
    return p;
}

double ratio_for_alphabet(double alphabet_size) {
    if (!(alphabet_size > 1.0) || !std::isfinite(alphabet_size)) {
        throw Error(ErrorCode::domain, "alphabet size must be a finite real > 1");
    }
    return alphabet_size / (alphabet_size - 1.0);
}

namespace {

// Evaluated in extended precision: for L around 50 and small r the exponent
// L*log(1-q^r) is large enough that double rounding would cost ~1e-14.
long double log_miss(const ModelParams& p, std::uint64_t r) {
    const long double k = static_cast<long double>(p.alphabet_size);
    return static_cast<long double>(r) * std::log1p(-1.0L / k);
}

// log(1 - q^r) for r >= 1
long double log_hit(const ModelParams& p, std::uint64_t r) {
    const long double lm = log_miss(p, r);
    const long double miss = std::exp(lm);
    return miss < 0.5L ? std::log1p(-miss) : std::log(-std::expm1(lm));
}

}  // namespace

double miss_prob(const ModelParams& params, RoundCount r) {
    return static_cast<double>(std::exp(log_miss(params, r.value)));
}

double round_cdf(const ModelParams& params, RoundCount r) {
    if (r.value == 0) return 0.0;
    const long double l = static_cast<long double>(params.word_length);
    return static_cast<double>(std::exp(l * log_hit(params, r.value)));
}

double round_survival(const ModelParams& params, RoundCount r) {
    if (r.value == 0) return 1.0;
    const long double l = static_cast<long double>(params.word_length);
    return static_cast<double>(-std::expm1(l * log_hit(params, r.value)));
}

double round_pmf(const ModelParams& params, RoundCount r) {
    if (r.value == 0) {
        throw Error(ErrorCode::domain, "round_pmf is defined for r >= 1");
    }
    return round_cdf(params, r) - round_cdf(params, RoundCount{r.value - 1});
}

}  // namespace rounds
