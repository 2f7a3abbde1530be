#include "kummer/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace kummer {

namespace {

LambdaPoly build(std::initializer_list<std::pair<long, std::array<std::uint32_t, 3>>> terms) {
    std::vector<LambdaPoly::Term> out;
    for (const auto& [c, e] : terms) out.push_back({e, BigRational(c)});
    return LambdaPoly::from_terms(std::move(out));
}

LambdaMap make_lambda_map() {
    const LambdaPoly l1 = LambdaPoly::variable(0), l2 = LambdaPoly::variable(1), l3 = LambdaPoly::variable(2);
    const LambdaPoly one = LambdaPoly::constant(1);
    LambdaMap m;
    m.d = (l2 - one) * l2 * (l1 - l3);
    m.p_num = -build({{1, {1, 1, 0}},
                      {-1, {2, 1, 0}},
                      {-1, {1, 0, 1}},
                      {2, {2, 0, 1}},
                      {-3, {1, 1, 1}},
                      {2, {2, 1, 1}},
                      {1, {0, 2, 1}},
                      {-1, {1, 2, 1}},
                      {2, {1, 0, 2}},
                      {-3, {2, 0, 2}},
                      {-1, {0, 1, 2}},
                      {2, {1, 1, 2}}});
    const LambdaPoly shared = (l1 - one) * l1 * (l1 - l2) * (l2 - l3) * (l3 - one) * l3;
    m.q_num = shared * build({{1, {1, 0, 0}}, {-1, {0, 1, 0}}, {1, {1, 1, 0}}, {1, {0, 0, 1}}, {-3, {1, 0, 1}},
                              {1, {0, 1, 1}}});
    m.r_num = shared * shared;
    return m;
}

WeightedPoly wp(const char* text) {
    static constexpr std::array<std::string_view, 4> names{"p", "q", "r", "b"};
    return parse_poly<4>(text, names);
}

template <class T, class Poly, std::size_t N>
double magnitude_sum(const Poly& poly, const std::array<T, N>& x) {
    double total = 0.0;
    for (const auto& t : poly.terms()) {
        std::complex<double> v = t.coeff.to_double();
        for (std::size_t i = 0; i < N; ++i)
            for (std::uint32_t k = 0; k < t.exponent[i]; ++k) v *= x[i];
        total += std::abs(v);
    }
    return total;
}

}  // namespace

const LambdaMap& lambda_map() {
    static const LambdaMap m = make_lambda_map();
    return m;
}

std::array<BigRational, 3> lambda_to_pqr(const std::array<BigRational, 3>& lambda) {
    const auto& m = lambda_map();
    const BigRational d = m.d.evaluate(lambda);
    if (d.is_zero()) throw std::domain_error("lambda_to_pqr: d_lambda vanishes");
    return {m.p_num.evaluate(lambda) / d, m.q_num.evaluate(lambda) / (d * d), m.r_num.evaluate(lambda) / (d * d * d)};
}

std::array<std::complex<double>, 3> lambda_to_pqr(const std::array<std::complex<double>, 3>& lambda) {
    const auto& m = lambda_map();
    const std::complex<double> d = m.d.evaluate(lambda);
    if (std::abs(d) <= 1e-14 * magnitude_sum(m.d, lambda)) throw std::domain_error("lambda_to_pqr: d_lambda vanishes");
    return {m.p_num.evaluate(lambda) / d, m.q_num.evaluate(lambda) / (d * d), m.r_num.evaluate(lambda) / (d * d * d)};
}

const std::array<WeightedPoly, 4>& t_polynomials() {
    static const std::array<WeightedPoly, 4> t{
        wp("-1/3 * b^2 + 1/3 * p b + -1/3 * p^2 + q"),
        wp("-1/54") * wp("b + -2 * p") * wp("4 * b^2 + 2 * b p + -2 * p^2 + 9 * q") - wp("r"),
        wp("1/4 * b^2 r"),
        wp("1/48 * b^2") * wp("3 * q^2 + 4 * b r + -8 * p r"),
    };
    return t;
}

std::array<BigRational, 4> pqrb_to_t(const std::array<BigRational, 4>& pqrb) {
    const auto& t = t_polynomials();
    return {t[0].evaluate(pqrb), t[1].evaluate(pqrb), t[2].evaluate(pqrb), t[3].evaluate(pqrb)};
}

bool is_weighted_homogeneous(const WeightedPoly& poly, std::uint32_t weight) {
    static constexpr std::array<std::uint32_t, 4> w{2, 4, 6, 2};
    for (const auto& t : poly.terms()) {
        std::uint32_t s = 0;
        for (std::size_t i = 0; i < 4; ++i) s += w[i] * t.exponent[i];
        if (s != weight) return false;
    }
    return true;
}

bool scaling_identity() {
    // Variables (p, q, r, b, s).
    using P5 = Polynomial<BigRational, 5>;
    const P5 p = P5::variable(0), q = P5::variable(1), r = P5::variable(2), b = P5::variable(3), s = P5::variable(4);
    const std::array<P5, 4> plain{p, q, r, b};
    const std::array<P5, 4> scaled{s.pow(2) * p, s.pow(4) * q, s.pow(6) * r, s.pow(2) * b};
    const auto& t = t_polynomials();
    for (std::size_t i = 0; i < 4; ++i)
        if (t[i].evaluate(scaled) != s.pow(kTWeights[i]) * t[i].evaluate(plain)) return false;
    return true;
}

bool discriminant_factorization() {
    // Variables (x, t, p, q, r).
    using P5 = Polynomial<BigRational, 5>;
    const P5 x = P5::variable(0), t = P5::variable(1), p = P5::variable(2), q = P5::variable(3), r = P5::variable(4);
    const P5 r3 = t.pow(3) + p * t * t + q * t + r;
    const P5 r2 = r3 - t * t;
    const P5 cubic = x * (x + t * t) * (x + r3);

    // Coefficients of the monic cubic in x.
    std::array<P5, 4> coeff;
    for (const auto& term : cubic.terms()) {
        auto e = term.exponent;
        const std::uint32_t k = e[0];
        e[0] = 0;
        coeff[k] += P5::monomial(e, term.coeff);
    }
    if (coeff[3] != P5::constant(1)) return false;
    const P5 disc = cubic_discriminant(coeff[2], coeff[1], coeff[0]);
    return disc == t.pow(4) * r3 * r3 * r2 * r2;
}

MultiPoly divisor_d1() {
    return parse_poly(
        "-1 * q^4 + 2 * p q^4 + -4 * q^2 r + 15 * p q^2 r + -15 * p^2 q^2 r + 6 * q^3 r + 12 * p r^2 + "
        "-36 * p^2 r^2 + 24 * p^3 r^2 + -81 * r^3");
}

MultiPoly divisor_d2() {
    return parse_poly(
        "-1 * q^2 + 2 * p q^2 + -1 * p^2 q^2 + 4 * q^3 + -4 * r + 12 * p r + -12 * p^2 r + 4 * p^3 r + 18 * q r + "
        "-18 * p q r + 27 * r^2");
}

MultiPoly divisor_d3() { return parse_poly("-1 * p^2 q^2 + 4 * q^3 + 4 * p^3 r + -18 * p q r + 27 * r^2"); }

const std::vector<NamedDivisor>& singular_candidates() {
    static const std::vector<NamedDivisor> c{{"p", var_poly(Var::p)},  {"q", var_poly(Var::q)},
                                             {"r", var_poly(Var::r)},  {"d1", divisor_d1()},
                                             {"d2", divisor_d2()},     {"d3", divisor_d3()}};
    return c;
}

const std::vector<NamedDivisor>& singular_divisors() {
    static const std::vector<NamedDivisor> c{{"p", var_poly(Var::p)}, {"q", var_poly(Var::q)},
                                             {"r", var_poly(Var::r)}, {"d2", divisor_d2()},
                                             {"d3", divisor_d3()}};
    return c;
}

DivisorReport singular_divisor_membership(const std::array<BigRational, 3>& point) {
    DivisorReport out;
    for (const auto& d : singular_divisors())
        if (d.poly.evaluate(point).is_zero()) out.on.push_back(d.name);
    return out;
}

DivisorReport singular_divisor_membership(const std::array<std::complex<double>, 3>& point, double floor) {
    DivisorReport out;
    for (const auto& d : singular_divisors()) {
        const double value = std::abs(evaluate(d.poly, point));
        out.values.emplace_back(d.name, value);
        if (value <= floor * std::max(1.0, magnitude_sum(d.poly, point))) out.on.push_back(d.name);
    }
    return out;
}

}  // namespace kummer
