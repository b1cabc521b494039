#include "rounds/asymptotic.hpp"

#include <cmath>
#include <numbers>

#include "rounds/error.hpp"

namespace rounds {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr int max_fourier_terms = 100000;

void require_tol(double rel_tol) {
    if (!(rel_tol > 0.0)) throw Error(ErrorCode::invalid_tolerance, "series tolerance must be positive");
}

double log_base_fraction(double n, double log_m) {
    if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::domain, "argument must be positive");
    const double x = std::log(n) / log_m;
    return x - std::floor(x);
}

// (2/log m) sum_{k>=1} Re(Gamma(s - i tau_k) e^{2 pi i k frac} w(k)), tau_k = 2 pi k / log m.
// `magnitude` switches to the triangle bound sum |Gamma| |w|.
template <class Weight>
double gamma_fourier_sum(double s, double log_m, double frac, double rel_tol, Weight weight,
                         bool magnitude = false) {
    const double scale = 2.0 / log_m;
    double sum = 0.0;
    for (int k = 1; k <= max_fourier_terms; ++k) {
        const double tau = two_pi * static_cast<double>(k) / log_m;
        const Complex g = complex_gamma(Complex{s, -tau});
        const Complex w = weight(tau);
        const double bound = scale * std::abs(g) * std::abs(w);
        if (magnitude) {
            sum += bound;
        } else {
            double turns = static_cast<double>(k) * frac;
            turns -= std::floor(turns);
            const Complex phase = std::polar(1.0, two_pi * turns);
            sum += scale * (g * phase * w).real();
        }
        if (bound == 0.0 || bound < rel_tol * (std::fabs(sum) + 1e-30)) break;
    }
    return sum;
}

Complex unit_weight(double) { return {1.0, 0.0}; }
Complex derivative_weight(double tau) { return {0.0, tau}; }

void require_length(double word_length) {
    if (!(word_length > 0.0) || !std::isfinite(word_length)) {
        throw Error(ErrorCode::domain, "word length must be positive");
    }
}

}  // namespace

double fluctuation_series(int s, double n, double m, double rel_tol) {
    require_tol(rel_tol);
    if (s != 1 && s != -1) throw Error(ErrorCode::domain, "f_s is defined for s = -1 and s = +1");
    if (!(m > 1.0) || !std::isfinite(m)) throw Error(ErrorCode::domain, "base m must be > 1");
    const double log_m = std::log(m);
    return gamma_fourier_sum(static_cast<double>(s), log_m, log_base_fraction(n, log_m), rel_tol,
                             unit_weight);
}

double u_sum_asymptotic(double m, std::int64_t n, double rel_tol) {
    if (!(m > 1.0) || !std::isfinite(m)) throw Error(ErrorCode::domain, "base m must be > 1");
    if (n < 2) throw Error(ErrorCode::domain, "U-sum requires n >= 2");
    const double log_m = std::log(m);
    const auto nd = static_cast<double>(n);
    const double f_minus = fluctuation_series(-1, nd, m, rel_tol);
    const double f_plus = fluctuation_series(1, nd, m, rel_tol);
    return nd * std::log(nd) / log_m + nd * ((euler_gamma - 1.0) / log_m - 0.5 + f_minus) +
           m / (m - 1.0) - 1.0 / (2.0 * log_m) - 0.5 * f_plus;
}

double beta_fluctuation(double alphabet_size, double word_length, double rel_tol) {
    require_tol(rel_tol);
    require_length(word_length);
    const double log_x = std::log(ratio_for_alphabet(alphabet_size));
    return gamma_fourier_sum(-1.0, log_x, log_base_fraction(word_length, log_x), rel_tol,
                             derivative_weight);
}

double beta_closed(double alphabet_size, double word_length, double rel_tol) {
    const double log_x = std::log(ratio_for_alphabet(alphabet_size));
    const double constant = 0.5 + euler_gamma / log_x;
    return constant + beta_fluctuation(alphabet_size, word_length, rel_tol);
}

double beta_difference(double alphabet_size, std::int64_t word_length, double rel_tol) {
    const double x = ratio_for_alphabet(alphabet_size);
    if (word_length < 2) throw Error(ErrorCode::domain, "beta_difference requires L >= 2");
    const double log_x = std::log(x);
    const auto l = static_cast<double>(word_length);
    const double df_minus =
        fluctuation_series(-1, l + 1.0, x, rel_tol) - fluctuation_series(-1, l, x, rel_tol);
    const double df_plus =
        fluctuation_series(1, l + 1.0, x, rel_tol) - fluctuation_series(1, l, x, rel_tol);
    return l * df_minus + 0.5 + euler_gamma / log_x + 0.5 * df_plus;
}

double oscillation_amplitude(double alphabet_size, double rel_tol) {
    require_tol(rel_tol);
    const double log_x = std::log(ratio_for_alphabet(alphabet_size));
    return gamma_fourier_sum(-1.0, log_x, 0.0, rel_tol, derivative_weight, true);
}

AsymptoticBreakdown mean_rounds_asymptotic(double alphabet_size, double word_length,
                                           double rel_tol) {
    require_length(word_length);
    const double log_x = std::log(ratio_for_alphabet(alphabet_size));
    AsymptoticBreakdown b;
    b.leading = std::log(word_length) / log_x;
    b.beta_constant = 0.5 + euler_gamma / log_x;
    b.beta_fluctuation = beta_fluctuation(alphabet_size, word_length, rel_tol);
    b.beta_value = b.beta_constant + b.beta_fluctuation;
    b.total = b.leading + b.beta_value;
    return b;
}

AsymptoticBreakdown mean_rounds_asymptotic(const ModelParams& params, double rel_tol) {
    return mean_rounds_asymptotic(static_cast<double>(params.alphabet_size),
                                  static_cast<double>(params.word_length), rel_tol);
}

double mean_rounds_simple(double alphabet_size, double word_length) {
    require_length(word_length);
    const double log_x = std::log(ratio_for_alphabet(alphabet_size));
    return (std::log(word_length) + euler_gamma) / log_x + 0.5;
}

double mean_rounds_simple(const ModelParams& params) {
    return mean_rounds_simple(static_cast<double>(params.alphabet_size),
                              static_cast<double>(params.word_length));
}

double asymptotic_remainder_heuristic(double alphabet_size, double word_length) {
    require_length(word_length);
    const double log_x = std::log(ratio_for_alphabet(alphabet_size));
    return 1.0 / (word_length * log_x);
}

MeanEstimate to_estimate(const AsymptoticBreakdown& breakdown, const ModelParams& params) {
    const auto k = static_cast<double>(params.alphabet_size);
    const auto l = static_cast<double>(params.word_length);
    MeanEstimate est;
    est.value = breakdown.total;
    est.method = Method::asymptotic;
    // the implemented fluctuation is itself only accurate to its own amplitude
    est.error_bound = asymptotic_remainder_heuristic(k, l) + oscillation_amplitude(k);
    return est;
}

MeanEstimate simple_estimate(const ModelParams& params) {
    const auto k = static_cast<double>(params.alphabet_size);
    const auto l = static_cast<double>(params.word_length);
    MeanEstimate est;
    est.value = mean_rounds_simple(params);
    est.method = Method::simple;
    est.error_bound = asymptotic_remainder_heuristic(k, l) + 2.0 * oscillation_amplitude(k);
    return est;
}

}  // namespace rounds
