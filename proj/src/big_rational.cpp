#include "kummer/big_rational.hpp"

#include <stdexcept>

namespace kummer {

BigRational::BigRational(long num, long den) : BigRational(Integer(num), Integer(den)) {}

BigRational::BigRational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("BigRational: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

BigRational::BigRational(mpq_class value) : value_(std::move(value)) {
    if (value_.get_den() == 0) throw std::domain_error("BigRational: zero denominator");
    value_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s, bool allow_sign) {
        if (!s.empty() && allow_sign && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    auto to_int = [](std::string_view s) {
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        return Integer(std::string(s), 10);
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_int(text, true)) throw std::invalid_argument("BigRational: bad integer '" + std::string(text) + "'");
        return BigRational(to_int(text));
    }
    auto num = trim(text.substr(0, slash));
    auto den = trim(text.substr(slash + 1));
    if (!valid_int(num, true) || !valid_int(den, false))
        throw std::invalid_argument("BigRational: bad fraction '" + std::string(text) + "'");
    return BigRational(to_int(num), to_int(den));
}

std::string BigRational::to_fraction_string() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string BigRational::to_string() const {
    if (is_integer()) return value_.get_num().get_str();
    return to_fraction_string();
}

BigRational BigRational::abs() const {
    BigRational out = *this;
    mpq_abs(out.value_.get_mpq_t(), value_.get_mpq_t());
    return out;
}

BigRational BigRational::inverse() const {
    if (is_zero()) throw std::domain_error("BigRational: inverse of zero");
    BigRational out;
    mpq_inv(out.value_.get_mpq_t(), value_.get_mpq_t());
    return out;
}

BigRational BigRational::pow(std::uint32_t exponent) const {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
    BigRational out;
    out.value_ = mpq_class(num, den);  // already coprime
    return out;
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
    mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
    return *this;
}

BigRational& BigRational::operator-=(const BigRational& rhs) {
    mpq_sub(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
    return *this;
}

BigRational& BigRational::operator*=(const BigRational& rhs) {
    mpq_mul(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
    return *this;
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("BigRational: division by zero");
    mpq_div(value_.get_mpq_t(), value_.get_mpq_t(), rhs.value_.get_mpq_t());
    return *this;
}

BigRational BigRational::operator-() const {
    BigRational out;
    mpq_neg(out.value_.get_mpq_t(), value_.get_mpq_t());
    return out;
}

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigRational factorial(std::uint32_t n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return BigRational(f);
}

BigRational binomial(std::uint32_t n, std::uint32_t k) {
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return BigRational(k > n ? Integer(0) : b);
}

}  // namespace kummer
