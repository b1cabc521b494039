#pragma once

#include <cstdint>
#include <string>

#include "rounds/exact.hpp"
#include "rounds/gamma.hpp"
#include "rounds/model.hpp"

namespace rounds {

/// Euler's constant to 20 significant digits.
inline constexpr double euler_gamma = 0.57721566490153286061;

inline constexpr double default_series_tol = 1e-15;

/// Large-L expansion of the mean: leading + beta, with beta split into its
/// constant part 1/2 + gamma/log X and a tiny periodic fluctuation.
struct AsymptoticBreakdown {
    double leading = 0.0;           // log L / log X
    double beta_value = 0.0;        // beta_constant + beta_fluctuation
    double beta_constant = 0.0;     // 1/2 + gamma / log X
    double beta_fluctuation = 0.0;  // periodic in log_X L
    double total = 0.0;             // leading + beta_value
    std::string residual_order = "O(1/L)";
};

/// Fourier sum over Gamma on the vertical line Re = s:
///   f_s(n) = (2/log m) sum_{k>=1} Re(Gamma(s - 2 pi i k / log m) exp(2 pi i k log_m n)).
/// Periodic with period 1 in log_m n. The series stops at the first k whose
/// term bound falls below rel_tol * (|partial sum| + 1e-30).
/// Throws Error(domain) for m <= 1, n <= 0 or s outside {-1, +1}.
double fluctuation_series(int s, double n, double m, double rel_tol = default_series_tol);

/// de Bruijn's expansion of U_{m,n}, dropping the O(1/n) remainder.
double u_sum_asymptotic(double m, std::int64_t n, double rel_tol = default_series_tol);

/// beta(L) as the closed Fourier form, exactly periodic in log_X L.
double beta_closed(double alphabet_size, double word_length, double rel_tol = default_series_tol);

/// The periodic part of beta_closed alone (beta_closed minus 1/2 + gamma/log X).
double beta_fluctuation(double alphabet_size, double word_length,
                        double rel_tol = default_series_tol);

/// beta(L) through finite differences of f_{-1} and f_1 at L and L+1.
/// Agrees with beta_closed up to O(1/L). Requires L >= 2.
double beta_difference(double alphabet_size, std::int64_t word_length,
                       double rel_tol = default_series_tol);

/// Triangle-inequality bound on |beta_fluctuation|, uniform in L. Returns 0
/// when every Gamma value underflows (roughly K > 150).
double oscillation_amplitude(double alphabet_size, double rel_tol = default_series_tol);

AsymptoticBreakdown mean_rounds_asymptotic(double alphabet_size, double word_length,
                                           double rel_tol = default_series_tol);
AsymptoticBreakdown mean_rounds_asymptotic(const ModelParams& params,
                                           double rel_tol = default_series_tol);

/// (log L + gamma) / log X + 1/2: the expansion without its fluctuation.
double mean_rounds_simple(double alphabet_size, double word_length);
double mean_rounds_simple(const ModelParams& params);

/// Heuristic size of the dropped O(1/L) term, 1/(L log X). Measured residuals
/// sit near half of this for K in [2, 40] and L >= 2.
double asymptotic_remainder_heuristic(double alphabet_size, double word_length);

/// Wraps the asymptotic and simple routes as MeanEstimates with heuristic bounds.
MeanEstimate to_estimate(const AsymptoticBreakdown& breakdown, const ModelParams& params);
MeanEstimate simple_estimate(const ModelParams& params);

}  // namespace rounds
