#include "rounds/rational.hpp"

#include <gmp.h>

#include <cctype>
#include <vector>

#include "rounds/error.hpp"

namespace rounds {

ExactRational::ExactRational(mpz_class numerator, mpz_class denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_ == 0) throw Error(ErrorCode::domain, "rational with zero denominator");
    normalize();
}

void ExactRational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g != 1 && g != 0) {
        mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

ExactRational ExactRational::parse(const std::string& text) {
    auto bad = [&] { return Error(ErrorCode::usage, "cannot parse rational '" + text + "'"); };
    if (text.empty()) throw bad();
    try {
        if (auto slash = text.find('/'); slash != std::string::npos) {
            return {mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1))};
        }
        if (auto dot = text.find('.'); dot != std::string::npos) {
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            const auto frac_len = text.size() - dot - 1;
            for (std::size_t i = 0; i < digits.size(); ++i) {
                const bool sign_ok = i == 0 && (digits[i] == '-' || digits[i] == '+');
                if (!sign_ok && !std::isdigit(static_cast<unsigned char>(digits[i]))) throw bad();
            }
            if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
            return {mpz_class(digits), den};
        }
        return {mpz_class(text), mpz_class(1)};
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

double ExactRational::to_double() const {
    mpq_class q;
    mpq_set_num(q.get_mpq_t(), num_.get_mpz_t());
    mpq_set_den(q.get_mpq_t(), den_.get_mpz_t());
    return q.get_d();
}

std::string ExactRational::to_string() const {
    if (den_ == 1) return num_.get_str();
    return num_.get_str() + "/" + den_.get_str();
}

std::string ExactRational::to_decimal(int digits) const {
    const auto bits = static_cast<mp_bitcnt_t>(digits * 4 + 64);
    mpq_class q;
    mpq_set_num(q.get_mpq_t(), num_.get_mpz_t());
    mpq_set_den(q.get_mpq_t(), den_.get_mpz_t());
    mpf_class f(q, bits);
    const int n = gmp_snprintf(nullptr, 0, "%.*Fg", digits, f.get_mpf_t());
    std::vector<char> buf(static_cast<std::size_t>(n) + 1);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    return buf.data();
}

ExactRational& ExactRational::operator+=(const ExactRational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

ExactRational& ExactRational::operator-=(const ExactRational& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

ExactRational& ExactRational::operator*=(const ExactRational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
    if (rhs.is_zero()) throw Error(ErrorCode::domain, "rational division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
}

ExactRational ExactRational::operator-() const {
    ExactRational r = *this;
    r.num_ = -r.num_;
    return r;
}

std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const mpz_class lhs = a.num_ * b.den_;
    const mpz_class rhs = b.num_ * a.den_;
    const int c = cmp(lhs, rhs);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

void RationalSum::add(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw Error(ErrorCode::domain, "rational with zero denominator");
    mpz_class p = numerator;
    mpz_class q = denominator;
    if (q < 0) {
        p = -p;
        q = -q;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), q.get_mpz_t());
    // num/den + p/q over lcm = den * (q/g)
    mpz_class q_over_g;
    mpz_divexact(q_over_g.get_mpz_t(), q.get_mpz_t(), g.get_mpz_t());
    mpz_class den_over_g;
    mpz_divexact(den_over_g.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    num_ = num_ * q_over_g + p * den_over_g;
    den_ *= q_over_g;
}

ExactRational RationalSum::result() const { return {num_, den_}; }

}  // namespace rounds
