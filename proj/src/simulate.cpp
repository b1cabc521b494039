#include "rounds/simulate.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "rounds/error.hpp"
#include "rounds/random.hpp"

namespace rounds {

std::string_view model_name(GuessModel m) noexcept {
    return m == GuessModel::parallel ? "parallel" : "serial";
}

std::string_view sampling_mode_name(SamplingMode m) noexcept {
    switch (m) {
        case SamplingMode::max_inverse: return "max-inverse";
        case SamplingMode::per_letter: return "per-letter";
        case SamplingMode::literal: return "literal";
    }
    return "unknown";
}

void RoundAccumulator::add(std::uint64_t rounds) {
    ++count_;
    sum_ += rounds;
    sum_sq_ += static_cast<uint128>(rounds) * rounds;
    min_ = std::min(min_, rounds);
    max_ = std::max(max_, rounds);
    ++histogram_[rounds];
}

void RoundAccumulator::merge(const RoundAccumulator& other) {
    count_ += other.count_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
    min_ = std::min(min_, other.min_);
    max_ = std::max(max_, other.max_);
    for (const auto& [r, c] : other.histogram_) histogram_[r] += c;
}

double RoundAccumulator::mean() const {
    if (count_ == 0) return 0.0;
    return static_cast<double>(static_cast<long double>(sum_) / static_cast<long double>(count_));
}

double RoundAccumulator::stddev() const {
    if (count_ < 2) return 0.0;
    // n * sum_sq - sum^2 is an exact non-negative integer
    const uint128 n = count_;
    const uint128 centered = n * sum_sq_ - sum_ * sum_;
    const long double var = static_cast<long double>(centered) /
                            (static_cast<long double>(count_) * static_cast<long double>(count_ - 1));
    return static_cast<double>(std::sqrt(var));
}

namespace {

// Runs `sample(gen)` for trials [0, n) split into contiguous chunks, one per
// thread. Each trial owns its substream, so chunking does not change results.
template <class Sampler>
RoundAccumulator run_trials(std::uint64_t trials, std::uint64_t seed, unsigned threads,
                            const Sampler& sample) {
    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(threads == 0 ? 1 : threads, 1, trials));
    std::vector<RoundAccumulator> partial(workers);
    auto work = [&](unsigned w) {
        const std::uint64_t begin = trials * w / workers;
        const std::uint64_t end = trials * (w + 1) / workers;
        for (std::uint64_t i = begin; i < end; ++i) {
            auto gen = Xoshiro256::substream(seed, i);
            partial[w].add(sample(gen));
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    RoundAccumulator total;
    for (const auto& p : partial) total.merge(p);
    return total;
}

SimulationSummary summarize(const RoundAccumulator& acc, const ModelParams& params,
                            std::uint64_t seed, GuessModel model) {
    SimulationSummary s;
    s.trials = acc.count();
    s.mean = acc.mean();
    s.std_error = acc.stddev() / std::sqrt(static_cast<double>(acc.count()));
    s.min_rounds = acc.min();
    s.max_rounds = acc.max();
    s.histogram = acc.histogram();
    s.seed = seed;
    s.model = model;
    s.alphabet_size = params.alphabet_size;
    s.word_length = params.word_length;
    return s;
}

void require_trials(std::uint64_t trials) {
    if (trials == 0) throw Error(ErrorCode::invalid_trials, "at least one trial is required");
}

std::uint64_t to_rounds(double r) {
    return r < 1.0 ? 1 : static_cast<std::uint64_t>(r);
}

}  // namespace

SimulationSummary simulate_parallel(const ModelParams& params, std::uint64_t trials,
                                    std::uint64_t seed, const SimulationOptions& options) {
    require_trials(trials);
    const double log_q = std::log1p(-1.0 / static_cast<double>(params.alphabet_size));
    const auto l = static_cast<double>(params.word_length);
    const auto k = static_cast<std::uint64_t>(params.alphabet_size);
    const auto letters = static_cast<std::uint64_t>(params.word_length);

    RoundAccumulator acc;
    switch (options.mode) {
        case SamplingMode::max_inverse:
            // smallest r with (1 - q^r)^L >= U, i.e. q^r <= 1 - U^{1/L}
            acc = run_trials(trials, seed, options.threads, [&](Xoshiro256& gen) {
                const double u = uniform_open(gen);
                const double miss = -std::expm1(std::log(u) / l);
                return to_rounds(std::ceil(std::log(miss) / log_q));
            });
            break;
        case SamplingMode::per_letter:
            acc = run_trials(trials, seed, options.threads, [&](Xoshiro256& gen) {
                std::uint64_t worst = 1;
                for (std::uint64_t i = 0; i < letters; ++i) {
                    const double u = uniform_open(gen);
                    worst = std::max(worst, to_rounds(std::ceil(std::log(u) / log_q)));
                }
                return worst;
            });
            break;
        case SamplingMode::literal:
            acc = run_trials(trials, seed, options.threads, [&](Xoshiro256& gen) {
                std::uint64_t remaining = letters;
                std::uint64_t rounds = 0;
                while (remaining > 0) {
                    ++rounds;
                    std::uint64_t wrong = 0;
                    for (std::uint64_t i = 0; i < remaining; ++i) {
                        if (uniform_below(gen, k) != 0) ++wrong;
                    }
                    remaining = wrong;
                }
                return rounds;
            });
            break;
    }
    return summarize(acc, params, seed, GuessModel::parallel);
}

double serial_mean_exact(const ModelParams& params) {
    return static_cast<double>(params.word_length) *
           std::log10(static_cast<double>(params.alphabet_size));
}

SimulationSummary simulate_serial(const ModelParams& params, std::uint64_t trials,
                                  std::uint64_t seed, double cap,
                                  const SimulationOptions& options) {
    require_trials(trials);
    const double log10_mean = serial_mean_exact(params);
    const double log10_cap = std::log10(cap);
    if (!(cap >= 1.0) || log10_mean > log10_cap) throw InfeasibleSerial(log10_mean, log10_cap);

    // geometric with success probability p = K^{-L}
    const double log_fail = std::log1p(-std::pow(10.0, -log10_mean));
    const RoundAccumulator acc = run_trials(trials, seed, options.threads, [&](Xoshiro256& gen) {
        return to_rounds(std::ceil(std::log(uniform_open(gen)) / log_fail));
    });
    return summarize(acc, params, seed, GuessModel::serial);
}

double chi_square_p_value(double statistic, int degrees_of_freedom) {
    if (degrees_of_freedom < 1) throw Error(ErrorCode::degenerate_bins, "chi-square needs df >= 1");
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * degrees_of_freedom, 0.5 * statistic);
}

GoodnessOfFit empirical_cdf_check(const SimulationSummary& summary, const ModelParams& params) {
    if (summary.model != GuessModel::parallel) {
        throw Error(ErrorCode::domain, "the round pmf describes the parallel model only");
    }
    if (summary.trials < min_gof_trials) {
        throw Error(ErrorCode::too_few_trials,
                    "goodness of fit needs at least " + std::to_string(min_gof_trials) + " trials");
    }
    if (summary.histogram.size() < 2) {
        throw Error(ErrorCode::degenerate_bins, "histogram occupies a single round count");
    }
    const auto n = static_cast<double>(summary.trials);
    constexpr double min_expected = 5.0;

    struct Bin {
        double expected;
        double observed;
    };
    std::vector<Bin> bins;
    Bin current{0.0, 0.0};
    std::uint64_t r = 1;
    auto observed_at = [&](std::uint64_t round) {
        const auto it = summary.histogram.find(round);
        return it == summary.histogram.end() ? 0.0 : static_cast<double>(it->second);
    };
    // stop once the tail beyond r - 1 expects fewer than min_expected counts
    while (n * round_survival(params, RoundCount{r - 1}) >= min_expected) {
        current.expected += n * round_pmf(params, RoundCount{r});
        current.observed += observed_at(r);
        if (current.expected >= min_expected) {
            bins.push_back(current);
            current = {0.0, 0.0};
        }
        ++r;
    }
    current.expected += n * round_survival(params, RoundCount{r - 1});
    for (auto it = summary.histogram.lower_bound(r); it != summary.histogram.end(); ++it) {
        current.observed += static_cast<double>(it->second);
    }
    if (!bins.empty() && current.expected < min_expected) {
        bins.back().expected += current.expected;
        bins.back().observed += current.observed;
    } else if (current.expected > 0.0) {
        bins.push_back(current);
    }
    if (bins.size() < 2) throw Error(ErrorCode::degenerate_bins, "fewer than two pooled bins");

    GoodnessOfFit fit;
    for (const auto& b : bins) {
        const double d = b.observed - b.expected;
        fit.chi_square += d * d / b.expected;
    }
    fit.bins = static_cast<int>(bins.size());
    fit.degrees_of_freedom = fit.bins - 1;
    fit.p_value = chi_square_p_value(fit.chi_square, fit.degrees_of_freedom);
    return fit;
}

GoodnessOfFit chi_square_homogeneity(const SimulationSummary& a, const SimulationSummary& b) {
    if (a.trials == 0 || b.trials == 0) {
        throw Error(ErrorCode::too_few_trials, "both samples need at least one trial");
    }
    std::map<std::uint64_t, std::pair<double, double>> joint;
    for (const auto& [r, c] : a.histogram) joint[r].first += static_cast<double>(c);
    for (const auto& [r, c] : b.histogram) joint[r].second += static_cast<double>(c);

    constexpr double min_combined = 10.0;
    std::vector<std::pair<double, double>> bins;
    std::pair<double, double> current{0.0, 0.0};
    for (const auto& [r, counts] : joint) {
        current.first += counts.first;
        current.second += counts.second;
        if (current.first + current.second >= min_combined) {
            bins.push_back(current);
            current = {0.0, 0.0};
        }
    }
    if (current.first + current.second > 0.0) {
        if (bins.empty()) {
            bins.push_back(current);
        } else {
            bins.back().first += current.first;
            bins.back().second += current.second;
        }
    }
    if (bins.size() < 2) throw Error(ErrorCode::degenerate_bins, "fewer than two pooled bins");

    const auto na = static_cast<double>(a.trials);
    const auto nb = static_cast<double>(b.trials);
    GoodnessOfFit fit;
    for (const auto& [oa, ob] : bins) {
        const double total = oa + ob;
        const double ea = total * na / (na + nb);
        const double eb = total * nb / (na + nb);
        fit.chi_square += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    }
    fit.bins = static_cast<int>(bins.size());
    fit.degrees_of_freedom = fit.bins - 1;
    fit.p_value = chi_square_p_value(fit.chi_square, fit.degrees_of_freedom);
    return fit;
}

}  // namespace rounds
