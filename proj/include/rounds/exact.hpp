#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "rounds/model.hpp"
#include "rounds/rational.hpp"

namespace rounds {

enum class Method {
    survival_series,
    alternating_exact,
    alternating_float,
    knuth_identity,
    asymptotic,
    simple,
};

/// CLI/JSON tag: survival, exact-rational, alternating-float, knuth-identity,
/// asymptotic, simple.
std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// Expected number of rounds together with how it was obtained.
///
/// `error_bound` is rigorous for the survival series and exact routes. For the
/// floating alternating sum it is eps * sum|terms|; for the asymptotic routes
/// it is a heuristic (see asymptotic.hpp).
struct MeanEstimate {
    double value = 0.0;
    Method method = Method::survival_series;
    double error_bound = 0.0;
    /// sum|terms| / |result| for the floating alternating sum. May be +inf when
    /// the ratio is beyond double range; log10_cancellation_ratio is always finite.
    std::optional<double> cancellation_ratio;
    std::optional<double> log10_cancellation_ratio;
    /// Number of survival terms summed (survival route only).
    std::uint64_t terms = 0;
};

inline constexpr std::int64_t default_exact_cap = 300;

/// sum_{r>=0} P(N > r), truncated once the Bernoulli tail bound
/// L q^{R+1} / (1-q) drops below `tol`. Throws Error(invalid_tolerance) for tol <= 0.
MeanEstimate mean_rounds_survival(const ModelParams& params, double tol = 1e-12);

/// 1 + sum_{j=1}^{L} (-1)^{j+1} C(L,j) / (X^j - 1) with X = K/(K-1) exactly.
/// Throws Error(size_limit) when L > cap.
ExactRational mean_rounds_alternating_exact(const ModelParams& params,
                                            std::int64_t cap = default_exact_cap);

/// The same alternating sum in double precision. Diagnostic only: the sum is
/// hopelessly ill-conditioned once L reaches a few dozen letters.
MeanEstimate mean_rounds_alternating_float(const ModelParams& params);

/// U_{m,n} = sum_{k=2}^{n} C(n,k) (-1)^k / (m^{k-1} - 1).
/// Throws Error(domain) for m <= 1 or n < 2, Error(size_limit) for n > cap.
ExactRational u_sum_exact(const ExactRational& m, std::int64_t n,
                          std::int64_t cap = default_exact_cap);

/// alpha(L) - (1 + U_{X,L+1} - U_{X,L}); exactly zero when the identity holds.
ExactRational knuth_identity_residual(const ModelParams& params,
                                      std::int64_t cap = default_exact_cap);

/// 1 + U_{X,L+1} - U_{X,L} as a mean estimate (value rounded from the exact rational).
ExactRational mean_rounds_knuth(const ModelParams& params, std::int64_t cap = default_exact_cap);

/// X = K/(K-1) as an exact rational.
ExactRational exact_ratio(const ModelParams& params);

}  // namespace rounds
