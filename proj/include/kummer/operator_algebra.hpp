#pragma once

#include <map>
#include <string>
#include <vector>

#include "kummer/power_series.hpp"

namespace kummer {

/// Linear differential operator sum_a c_a(p,q,r) θp^a0 θq^a1 θr^a2 with all
/// polynomial coefficients written to the left of the Euler operators.
class ThetaOperator {
public:
    using Terms = std::map<Exponent3, MultiPoly>;

    ThetaOperator() = default;
    /// The operator of multiplication by `poly`.
    explicit ThetaOperator(const MultiPoly& poly);
    static ThetaOperator theta(Var v);
    static ThetaOperator constant(const BigRational& c) { return ThetaOperator(MultiPoly(c)); }
    /// `coeff` θ^`exponent`.
    static ThetaOperator term(const Exponent3& exponent, const MultiPoly& coeff);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::uint32_t order() const;
    MultiPoly coefficient(const Exponent3& exponent) const;
    /// Highest total degree among the polynomial coefficients.
    std::uint32_t coefficient_degree() const;

    ThetaOperator operator-() const;
    friend ThetaOperator operator+(const ThetaOperator& a, const ThetaOperator& b);
    friend ThetaOperator operator-(const ThetaOperator& a, const ThetaOperator& b);
    /// Left multiplication by a polynomial.
    friend ThetaOperator operator*(const MultiPoly& c, const ThetaOperator& a);
    friend bool operator==(const ThetaOperator& a, const ThetaOperator& b) = default;

    std::string to_string() const;

private:
    void add(const Exponent3& exponent, const MultiPoly& coeff);
    Terms terms_;
};

/// Normal-ordered product A∘B, using θ_x ∘ x^k = x^k (θ_x + k).
ThetaOperator compose(const ThetaOperator& a, const ThetaOperator& b);
ThetaOperator power(const ThetaOperator& a, std::uint32_t k);

/// Exact image of a truncated series; θ acts diagonally on monomials.
TruncatedSeries apply(const ThetaOperator& op, const TruncatedSeries& s);

/// The four reduced GKZ operators followed by the extra second-order
/// operator, each written as an annihilator (left side minus right side).
std::vector<ThetaOperator> build_canonical_system();

/// Largest total degree of a monomial multiplier in the canonical system;
/// an image of a cap-D series is exact through degree D minus this margin.
inline constexpr std::uint32_t kDegreeSafetyMargin = 3;

/// Expansion of the quintic coefficient identity in (l,m,n). It is the zero
/// polynomial exactly when the extra operator kills the period series
/// coefficientwise.
Polynomial<BigRational, 3> identity_expansion();

}  // namespace kummer
