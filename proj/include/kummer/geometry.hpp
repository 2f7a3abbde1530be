#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "kummer/multi_poly.hpp"

namespace kummer {

using LambdaPoly = Polynomial<BigRational, 3>;
/// Polynomials in (p, q, r, b) with weights (2, 4, 6, 2).
using WeightedPoly = Polynomial<BigRational, 4>;

/// The map (λ1,λ2,λ3) -> (p,q,r) as p = P/d, q = Q/d², r = R/d³ with
/// d = (λ2−1)λ2(λ1−λ3).
struct LambdaMap {
    LambdaPoly d, p_num, q_num, r_num;
};
const LambdaMap& lambda_map();

/// Throws std::domain_error when d vanishes at λ.
std::array<BigRational, 3> lambda_to_pqr(const std::array<BigRational, 3>& lambda);
std::array<std::complex<double>, 3> lambda_to_pqr(const std::array<std::complex<double>, 3>& lambda);

/// t4, t6, t10, t12 as polynomials in (p, q, r, b).
const std::array<WeightedPoly, 4>& t_polynomials();
std::array<BigRational, 4> pqrb_to_t(const std::array<BigRational, 4>& pqrb);

/// Weights of t4, t6, t10, t12.
inline constexpr std::array<std::uint32_t, 4> kTWeights{4, 6, 10, 12};

/// True when every term of `poly` has weighted degree `weight` under
/// the weights (2, 4, 6, 2) of (p, q, r, b).
bool is_weighted_homogeneous(const WeightedPoly& poly, std::uint32_t weight);

/// t_i(s²p, s⁴q, s⁶r, s²b) = s^{w_i} t_i(p,q,r,b) as polynomial identities in
/// (p, q, r, b, s).
bool scaling_identity();

/// disc_x of x³ + a x² + b x + c.
template <class P>
P cubic_discriminant(const P& a, const P& b, const P& c) {
    const P k4 = P::constant(4), k18 = P::constant(18), k27 = P::constant(27);
    return a * a * b * b - k4 * b * b * b - k4 * a * a * a * c - k27 * c * c + k18 * a * b * c;
}

/// Checks disc_x[x(x+t²)(x+R3(t))] = t⁴ R3² R2² as a polynomial identity in
/// (x, t, p, q, r), with R3 = t³+pt²+qt+r and R2 = R3 − t².
bool discriminant_factorization();

MultiPoly divisor_d1();
MultiPoly divisor_d2();
MultiPoly divisor_d3();

struct NamedDivisor {
    std::string name;
    MultiPoly poly;
};
/// p, q, r, d1, d2, d3: every factor allowed in a Pfaffian denominator.
const std::vector<NamedDivisor>& singular_candidates();
/// p, q, r, d2, d3: the singular locus of the system.
const std::vector<NamedDivisor>& singular_divisors();

struct DivisorReport {
    std::vector<std::string> on;
    std::vector<std::pair<std::string, double>> values;  // float mode only
};
DivisorReport singular_divisor_membership(const std::array<BigRational, 3>& point);
/// A divisor counts as hit when |f(x)| <= floor · max(1, Σ|terms of f at x|).
DivisorReport singular_divisor_membership(const std::array<std::complex<double>, 3>& point, double floor = 1e-12);

}  // namespace kummer
