#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>

#include "kummer/multi_poly.hpp"

namespace kummer {

/// Exact power series in (p,q,r) truncated at total degree `cap`.
class TruncatedSeries {
public:
    using Terms = std::map<Exponent3, BigRational>;

    explicit TruncatedSeries(std::uint32_t cap = 0) : cap_(cap) {}
    static TruncatedSeries from_poly(const MultiPoly& poly, std::uint32_t cap);

    std::uint32_t cap() const { return cap_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    BigRational coefficient(const Exponent3& e) const;

    /// Drops the term silently when its degree exceeds the cap.
    void add_term(const Exponent3& e, const BigRational& c);

    /// Lowest total degree carrying a nonzero coefficient, or nullopt for zero.
    std::optional<std::uint32_t> lowest_degree() const;
    /// True when every coefficient of total degree <= `degree` is zero.
    bool vanishes_through(std::uint32_t degree) const;

    MultiPoly to_poly() const;
    TruncatedSeries truncated(std::uint32_t cap) const;

    TruncatedSeries scaled(const BigRational& c) const;
    TruncatedSeries times_monomial(const Exponent3& e, const BigRational& c = BigRational(1)) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

private:
    std::uint32_t cap_;
    Terms terms_;
};

std::uint32_t total_degree(const Exponent3& e);

/// Closed-form coefficient of p^l q^m r^n in the period, normalized to 1 at
/// the origin:
///   16^{-s} ((2s)!)^2 / (s!)^3 / (l! m! n! (m+2n)!),   s = l + 2m + 3n.
BigRational period_coefficient(const Exponent3& index);
TruncatedSeries period_series(std::uint32_t cap);

/// Same coefficient recomputed from the residue expansion
///   sum_N ((1/2)_N / N!)^2 (t + p + q/t + r/t^2)^N,
/// taking the t^0 part of each power by explicit Laurent multiplication.
BigRational residue_oracle(const Exponent3& index);

struct SeriesValue {
    std::complex<double> value;
    /// Sum of |term| over the top degree layer; a proxy for truncation error.
    double tail = 0.0;
};

SeriesValue evaluate_series(const TruncatedSeries& s, const std::array<std::complex<double>, 3>& point);

/// All exponent triples of total degree <= cap in lex order.
std::vector<Exponent3> indices_up_to(std::uint32_t cap);

}  // namespace kummer
