#include "rounds/exact.hpp"

#include <gmp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "rounds/detail/summation.hpp"
#include "rounds/error.hpp"

namespace rounds {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> method_names{{
    {Method::survival_series, "survival"},
    {Method::alternating_exact, "exact-rational"},
    {Method::alternating_float, "alternating-float"},
    {Method::knuth_identity, "knuth-identity"},
    {Method::asymptotic, "asymptotic"},
    {Method::simple, "simple"},
}};

void check_cap(std::int64_t n, std::int64_t cap, const char* what) {
    if (n > cap) {
        throw Error(ErrorCode::size_limit, std::string(what) + " needs n = " + std::to_string(n) +
                                               " which exceeds the exact-arithmetic cap " +
                                               std::to_string(cap));
    }
}

// C(n, j) -> C(n, j+1)
void next_binomial(mpz_class& c, std::int64_t n, std::int64_t j) {
    c *= static_cast<unsigned long>(n - j);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(j + 1));
}

// sum_{j=first}^{n} sign(j) * C(n,j) * b^{j-shift} / (a^{j-shift} - b^{j-shift})
// for m = a/b > 1, where sign(j) = (-1)^j * parity.
ExactRational alternating_reciprocal_sum(const mpz_class& a, const mpz_class& b, std::int64_t n,
                                         std::int64_t first, std::int64_t shift, int parity) {
    RationalSum sum;
    mpz_class binom = 1;
    for (std::int64_t j = 0; j < first; ++j) next_binomial(binom, n, j);

    mpz_class a_pow;
    mpz_class b_pow;
    const auto e0 = static_cast<unsigned long>(first - shift);
    mpz_pow_ui(a_pow.get_mpz_t(), a.get_mpz_t(), e0);
    mpz_pow_ui(b_pow.get_mpz_t(), b.get_mpz_t(), e0);

    for (std::int64_t j = first; j <= n; ++j) {
        mpz_class numer = binom * b_pow;
        if (((j % 2 == 0) ? 1 : -1) * parity < 0) numer = -numer;
        sum.add(numer, a_pow - b_pow);
        if (j < n) {
            next_binomial(binom, n, j);
            a_pow *= a;
            b_pow *= b;
        }
    }
    return sum.result();
}

}  // namespace

std::string_view method_name(Method m) noexcept {
    for (const auto& [method, name] : method_names) {
        if (method == m) return name;
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    for (const auto& [method, n] : method_names) {
        if (n == name) return method;
    }
    return std::nullopt;
}

ExactRational exact_ratio(const ModelParams& params) {
    return {mpz_class(static_cast<long>(params.alphabet_size)),
            mpz_class(static_cast<long>(params.alphabet_size - 1))};
}

MeanEstimate mean_rounds_survival(const ModelParams& params, double tol) {
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::invalid_tolerance, "tolerance must be positive");
    }
    const double log_q = std::log1p(-1.0 / static_cast<double>(params.alphabet_size));
    const double l = static_cast<double>(params.word_length);
    const double one_minus_q = 1.0 / static_cast<double>(params.alphabet_size);

    // smallest R with L q^{R+1} / (1-q) < tol
    auto tail_bound = [&](std::uint64_t r) {
        return l * std::exp(static_cast<double>(r + 1) * log_q) / one_minus_q;
    };
    const double guess = std::log(tol * one_minus_q / l) / log_q - 1.0;
    auto last = static_cast<std::uint64_t>(std::max(0.0, std::floor(guess)));
    while (last > 0 && tail_bound(last - 1) < tol) --last;
    while (tail_bound(last) >= tol) ++last;

    detail::CompensatedSum sum;
    for (std::uint64_t r = 0; r <= last; ++r) {
        sum.add(round_survival(params, RoundCount{r}));
    }
    MeanEstimate est;
    est.value = sum.value();
    est.method = Method::survival_series;
    est.error_bound = tail_bound(last);
    est.terms = last + 1;
    return est;
}

ExactRational mean_rounds_alternating_exact(const ModelParams& params, std::int64_t cap) {
    check_cap(params.word_length, cap, "exact alternating sum");
    const mpz_class a = static_cast<long>(params.alphabet_size);
    const mpz_class b = static_cast<long>(params.alphabet_size - 1);
    // (-1)^{j+1}: parity -1 flips (-1)^j
    return ExactRational(1) + alternating_reciprocal_sum(a, b, params.word_length, 1, 0, -1);
}

MeanEstimate mean_rounds_alternating_float(const ModelParams& params) {
    const std::int64_t n = params.word_length;
    const double log_x = std::log(params.ratio);
    const double nd = static_cast<double>(n);

    double binom = 1.0;
    double sum = 1.0;
    double log_abs_max = 0.0;  // log of the leading 1
    for (std::int64_t j = 1; j <= n; ++j) {
        binom *= static_cast<double>(n - j + 1) / static_cast<double>(j);
        const double denom = std::expm1(static_cast<double>(j) * log_x);
        const double term = binom / denom;
        sum += (j % 2 == 1) ? term : -term;
        const double log_abs = std::lgamma(nd + 1.0) - std::lgamma(static_cast<double>(j) + 1.0) -
                               std::lgamma(nd - static_cast<double>(j) + 1.0) - std::log(denom);
        log_abs_max = std::max(log_abs_max, log_abs);
    }
    // log-sum-exp of |terms| in a second pass, shifted by the maximum
    double scaled = std::exp(-log_abs_max);
    for (std::int64_t j = 1; j <= n; ++j) {
        const double denom = std::expm1(static_cast<double>(j) * log_x);
        const double log_abs = std::lgamma(nd + 1.0) - std::lgamma(static_cast<double>(j) + 1.0) -
                               std::lgamma(nd - static_cast<double>(j) + 1.0) - std::log(denom);
        scaled += std::exp(log_abs - log_abs_max);
    }
    const double log_abs_sum = log_abs_max + std::log(scaled);

    // the true mean, from the stable route, is the reference magnitude
    const double reference = mean_rounds_survival(params, 1e-12).value;
    const double log10_ratio =
        std::max(0.0, (log_abs_sum - std::log(reference)) / std::log(10.0));

    MeanEstimate est;
    est.method = Method::alternating_float;
    est.value = std::isfinite(sum) ? sum : std::numeric_limits<double>::quiet_NaN();
    est.log10_cancellation_ratio = log10_ratio;
    est.cancellation_ratio = std::pow(10.0, log10_ratio);
    const double abs_sum = std::exp(log_abs_sum);
    est.error_bound = std::isfinite(est.value)
                          ? std::numeric_limits<double>::epsilon() * abs_sum
                          : std::numeric_limits<double>::infinity();
    return est;
}

ExactRational u_sum_exact(const ExactRational& m, std::int64_t n, std::int64_t cap) {
    if (m <= ExactRational(1)) throw Error(ErrorCode::domain, "U-sum requires m > 1");
    if (n < 2) throw Error(ErrorCode::domain, "U-sum requires n >= 2");
    check_cap(n, cap, "U-sum");
    // term k: C(n,k) (-1)^k b^{k-1} / (a^{k-1} - b^{k-1})
    return alternating_reciprocal_sum(m.numerator(), m.denominator(), n, 2, 1, 1);
}

ExactRational mean_rounds_knuth(const ModelParams& params, std::int64_t cap) {
    const std::int64_t l = params.word_length;
    check_cap(l + 1, cap, "Knuth identity");
    const ExactRational x = exact_ratio(params);
    // U_{X,1} is the empty sum
    const ExactRational u_l = l >= 2 ? u_sum_exact(x, l, cap) : ExactRational(0);
    return ExactRational(1) + u_sum_exact(x, l + 1, cap) - u_l;
}

ExactRational knuth_identity_residual(const ModelParams& params, std::int64_t cap) {
    check_cap(params.word_length + 1, cap, "Knuth identity");
    return mean_rounds_alternating_exact(params, cap) - mean_rounds_knuth(params, cap);
}

}  // namespace rounds
