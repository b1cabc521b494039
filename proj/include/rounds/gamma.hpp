#pragma once

#include <complex>

namespace rounds {

using Complex = std::complex<double>;

/// log Gamma(z) on some branch: the real part is log|Gamma(z)|, the imaginary
/// part is the argument modulo 2 pi. Lanczos (g = 7, 9 terms) for Re z >= 1/2,
/// reflection otherwise. Throws Error(pole) at 0, -1, -2, ...
Complex complex_log_gamma(Complex z);

/// Gamma(z). Underflows to exactly 0 far up the imaginary axis instead of
/// overflowing in the reflection formula.
Complex complex_gamma(Complex z);

}  // namespace rounds
