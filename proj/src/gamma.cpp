#include "rounds/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rounds/error.hpp"

namespace rounds {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coef{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

Complex log_gamma_right(Complex z) {
    z -= 1.0;
    Complex series = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i) {
        series += lanczos_coef[i] / (z + static_cast<double>(i));
    }
    const Complex t = z + lanczos_g + 0.5;
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

// log sin(pi z) without forming sin(pi z), which overflows for |Im z| > ~225.
Complex log_sin_pi(Complex z) {
    constexpr double pi = std::numbers::pi;
    const Complex i{0.0, 1.0};
    const double y = z.imag();
    if (std::fabs(y) < 10.0) return std::log(std::sin(pi * z));
    // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i); keep the dominant exponential
    if (y > 0.0) {
        // -e^{-i pi z} (1 - e^{2 i pi z}) / (2i)
        return -i * pi * z + std::log(1.0 - std::exp(2.0 * i * pi * z)) - std::log(-2.0 * i);
    }
    return i * pi * z + std::log(1.0 - std::exp(-2.0 * i * pi * z)) - std::log(2.0 * i);
}

}  // namespace

Complex complex_log_gamma(Complex z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        throw Error(ErrorCode::pole, "Gamma has a pole at non-positive integers");
    }
    if (z.real() >= 0.5) return log_gamma_right(z);
    constexpr double log_pi = 1.1447298858494001741;
    return log_pi - log_sin_pi(z) - log_gamma_right(1.0 - z);
}

Complex complex_gamma(Complex z) {
    return std::exp(complex_log_gamma(z));
}

}  // namespace rounds
