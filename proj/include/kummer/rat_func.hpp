#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kummer/multi_poly.hpp"

namespace kummer {

/// Raised when a rational function is evaluated where its denominator
/// vanishes to working precision.
class NearSingularError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Element of Q(p,q,r) kept in canonical form: numerator and denominator
/// coprime, denominator an integer polynomial of content one with positive
/// lex-leading coefficient. Zero is 0/1. Canonical form makes structural
/// equality mathematical equality.
class RatFunc {
public:
    RatFunc() : den_(MultiPoly::constant(1)) {}
    RatFunc(long v) : num_(MultiPoly::constant(v)), den_(MultiPoly::constant(1)) {}  // NOLINT(google-explicit-constructor)
    RatFunc(BigRational v) : num_(MultiPoly(std::move(v))), den_(MultiPoly::constant(1)) {}  // NOLINT
    RatFunc(MultiPoly poly) : num_(std::move(poly)), den_(MultiPoly::constant(1)) {}  // NOLINT
    RatFunc(const MultiPoly& num, const MultiPoly& den);

    static RatFunc variable(Var v) { return RatFunc(var_poly(v)); }

    const MultiPoly& numerator() const { return num_; }
    const MultiPoly& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
    RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

    RatFunc inverse() const;
    RatFunc partial_derivative(Var v) const;

    /// Throws NearSingularError when |den(x)| falls below `floor` times the
    /// sum of the absolute values of the denominator's terms at x.
    std::complex<double> evaluate(const std::array<std::complex<double>, 3>& point, double floor = 1e-12) const;

    /// `(<num>)/(<den>)` with both parts in the polynomial text encoding.
    std::string to_string() const;
    static RatFunc parse(std::string_view text);

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    struct Canonical {};
    RatFunc(MultiPoly num, MultiPoly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
    static RatFunc normalize_units(MultiPoly num, MultiPoly den);

    MultiPoly num_;
    MultiPoly den_;
};

}  // namespace kummer
