#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kummer {

using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class BigRational {
public:
    BigRational() = default;
    BigRational(long value) : value_(value) {}  // NOLINT: implicit by design of literals
    BigRational(long num, long den);
    explicit BigRational(const Integer& value) : value_(value) {}
    BigRational(const Integer& num, const Integer& den);
    explicit BigRational(mpq_class value);

    /// Accepts "n" or "n/d" with optional sign on the numerator.
    static BigRational parse(std::string_view text);

    /// Always "n/d", even for integers.
    std::string to_fraction_string() const;
    /// "n" for integers, "n/d" otherwise.
    std::string to_string() const;

    const mpq_class& value() const { return value_; }
    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }
    double to_double() const { return value_.get_d(); }

    BigRational abs() const;
    BigRational inverse() const;
    BigRational pow(std::uint32_t exponent) const;

    BigRational& operator+=(const BigRational& rhs);
    BigRational& operator-=(const BigRational& rhs);
    BigRational& operator*=(const BigRational& rhs);
    BigRational& operator/=(const BigRational& rhs);

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
    BigRational operator-() const;

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

private:
    mpq_class value_;
};

BigRational factorial(std::uint32_t n);
BigRational binomial(std::uint32_t n, std::uint32_t k);

}  // namespace kummer
