#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace rounds {

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
class ExactRational {
public:
    ExactRational() : num_(0), den_(1) {}
    ExactRational(std::int64_t value) : num_(static_cast<long>(value)), den_(1) {}  // NOLINT
    ExactRational(mpz_class numerator, mpz_class denominator);

    /// Parses "p/q", "p" or a decimal such as "1.5" (taken exactly).
    static ExactRational parse(const std::string& text);

    const mpz_class& numerator() const noexcept { return num_; }
    const mpz_class& denominator() const noexcept { return den_; }

    int sign() const noexcept { return sgn(num_); }
    bool is_zero() const noexcept { return sign() == 0; }

    /// Nearest-or-adjacent double (within one ulp).
    double to_double() const;
    /// "p/q", or "p" when the denominator is 1.
    std::string to_string() const;
    /// Decimal expansion with `digits` significant digits.
    std::string to_decimal(int digits) const;

    ExactRational& operator+=(const ExactRational& rhs);
    ExactRational& operator-=(const ExactRational& rhs);
    ExactRational& operator*=(const ExactRational& rhs);
    ExactRational& operator/=(const ExactRational& rhs);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
    ExactRational operator-() const;

    friend bool operator==(const ExactRational& a, const ExactRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b);

private:
    void normalize();

    mpz_class num_;
    mpz_class den_;
};

/// Accumulates many fractions p/q while keeping the running denominator equal
/// to the lcm of the inputs. Reduction to lowest terms happens once, in
/// result(). Alternating binomial sums have denominators that share most of
/// their factors, so this avoids a full gcd per term.
class RationalSum {
public:
    void add(const mpz_class& numerator, const mpz_class& denominator);
    void add(const ExactRational& value) { add(value.numerator(), value.denominator()); }
    ExactRational result() const;

private:
    mpz_class num_ = 0;
    mpz_class den_ = 1;
};

}  // namespace rounds
