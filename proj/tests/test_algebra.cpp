#include <gtest/gtest.h>

#include <random>

#include "kummer/rat_func.hpp"

using namespace kummer;

namespace {

MultiPoly P(const char* s) { return parse_poly(s); }

MultiPoly random_poly(std::mt19937_64& rng, int max_deg, int terms, int coeff_range) {
    std::uniform_int_distribution<int> deg(0, max_deg), c(-coeff_range, coeff_range);
    std::vector<MultiPoly::Term> out;
    for (int i = 0; i < terms; ++i) {
        Exponent3 e{static_cast<std::uint32_t>(deg(rng)), static_cast<std::uint32_t>(deg(rng)),
                    static_cast<std::uint32_t>(deg(rng))};
        out.push_back({e, BigRational(c(rng))});
    }
    return MultiPoly::from_terms(std::move(out));
}

}  // namespace

TEST(BigRational, NormalizesAndPrints) {
    BigRational a(6, -4);
    EXPECT_EQ(a.to_fraction_string(), "-3/2");
    EXPECT_EQ(BigRational(4, 2).to_string(), "2");
    EXPECT_EQ(BigRational(4, 2).to_fraction_string(), "2/1");
    EXPECT_EQ(BigRational::parse("-10/4"), BigRational(-5, 2));
    EXPECT_THROW(BigRational(1, 0), std::domain_error);
    EXPECT_THROW(BigRational(1) / BigRational(0), std::domain_error);
    EXPECT_EQ(factorial(10), BigRational(3628800));
    EXPECT_EQ(binomial(10, 3), BigRational(120));
}

TEST(Polynomial, ArithmeticAndPrinting) {
    const MultiPoly a = P("1 + 2 * p + -3/2 * q r^2");
    EXPECT_EQ(to_string(a), "1 + -3/2 * q r^2 + 2 * p");
    EXPECT_EQ(parse_poly(to_string(a)), a);
    EXPECT_EQ(P("p - q"), P("p + -1 * q"));
    EXPECT_EQ(to_string(MultiPoly{}), "0");
    const MultiPoly sq = (P("p") + P("q")).pow(2);
    EXPECT_EQ(sq, P("p^2 + 2 * p q + q^2"));
    EXPECT_EQ(sq.derivative(0), P("2 * p + 2 * q"));
    EXPECT_EQ(sq.substitute(1, BigRational(1)), P("p^2 + 2 * p + 1"));
    EXPECT_EQ(*sq.divide_exact(P("p + q")), P("p + q"));
    EXPECT_FALSE(sq.divide_exact(P("p + 1")).has_value());
    EXPECT_THROW(parse_poly("p +"), std::invalid_argument);
    EXPECT_THROW(parse_poly("x"), std::invalid_argument);
}

TEST(Polynomial, PrimitiveSplit) {
    auto s = primitive_split(P("-2/3 * p + 4/9 * q"));
    EXPECT_EQ(to_multi(s.primitive).scaled(s.scale), P("-2/3 * p + 4/9 * q"));
    EXPECT_EQ(content(s.primitive), Integer(1));
    EXPECT_GT(sgn(s.primitive.leading_term().coeff), 0);
}

TEST(Gcd, KnownFactors) {
    const MultiPoly d3 = P("-1 * p^2 q^2 + 4 * q^3 + 4 * p^3 r + -18 * p q r + 27 * r^2");
    const MultiPoly f = P("p + q r + 1");
    const MultiPoly g = P("p^2 + -1 * r");
    EXPECT_EQ(gcd(d3 * f * P("q"), d3 * g * P("q^2")), to_multi(primitive_split(d3 * P("q")).primitive));
    EXPECT_EQ(gcd(f, g), MultiPoly::constant(1));
    EXPECT_EQ(gcd(P("6 * p"), P("4 * p^2")), P("p"));
    EXPECT_THROW(gcd(MultiPoly{}, MultiPoly{}), std::invalid_argument);
}

TEST(Gcd, HeuristicAgreesWithPrs) {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 40; ++trial) {
        const MultiPoly c = random_poly(rng, 3, 4, 9);
        const MultiPoly a = random_poly(rng, 2, 4, 30) * c;
        const MultiPoly b = random_poly(rng, 2, 4, 30) * c;
        if (a.is_zero() || b.is_zero()) continue;
        const IntPoly ia = primitive_split(a).primitive, ib = primitive_split(b).primitive;
        const IntPoly g = gcd(ia, ib);
        EXPECT_EQ(g, gcd_prs(ia, ib)) << to_string(a) << " | " << to_string(b);
        EXPECT_TRUE(ia.divide_exact(g).has_value());
        EXPECT_TRUE(ib.divide_exact(g).has_value());
        if (!c.is_zero()) {
            EXPECT_TRUE(g.divide_exact(primitive_split(c).primitive).has_value());
        }
    }
}

TEST(RatFunc, CanonicalForm) {
    const RatFunc a(P("p^2 + -1"), P("2 * p + -2"));
    EXPECT_EQ(a.to_string(), "(1/2 + 1/2 * p)/(1)");
    EXPECT_EQ(a, RatFunc(P("1/2 * p + 1/2")));
    const RatFunc b(P("1"), P("-3 * q + 6"));
    EXPECT_EQ(b.denominator(), P("-2 + q"));
    EXPECT_EQ(b.numerator(), P("-1/3"));
    EXPECT_EQ(RatFunc::parse(b.to_string()), b);
    EXPECT_EQ(RatFunc::parse("(2)/(4 * p)"), RatFunc(P("1/2"), P("p")));
    EXPECT_EQ(RatFunc::parse("p^2 + 1"), RatFunc(P("p^2 + 1")));
    EXPECT_THROW(RatFunc(P("1"), MultiPoly{}), std::domain_error);
    EXPECT_THROW(RatFunc::parse("(p)/q"), std::invalid_argument);
    EXPECT_EQ(RatFunc(MultiPoly{}, P("p")).to_string(), "(0)/(1)");
}

TEST(RatFunc, FieldIdentities) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const MultiPoly n1 = random_poly(rng, 2, 3, 5), d1 = random_poly(rng, 2, 3, 5);
        const MultiPoly n2 = random_poly(rng, 2, 3, 5), d2 = random_poly(rng, 2, 3, 5);
        if (d1.is_zero() || d2.is_zero() || n2.is_zero()) continue;
        const RatFunc x(n1, d1), y(n2, d2);
        EXPECT_EQ((x + y) - y, x);
        EXPECT_EQ((x * y) / y, x);
        EXPECT_EQ(x * (x + y), x * x + x * y);
        EXPECT_EQ(RatFunc(n1 * d2 + n2 * d1, d1 * d2), x + y);
    }
}

TEST(RatFunc, DerivativeAndEvaluation) {
    const RatFunc f(P("p"), P("1 + -1 * p q"));
    EXPECT_EQ(f.partial_derivative(Var::p), RatFunc(P("1"), P("1 + -1 * p q").pow(2)));
    EXPECT_EQ(f.partial_derivative(Var::r), RatFunc{});
    const auto v = f.evaluate({{{0.5, 0.0}, {1.0, 0.0}, {3.0, 0.0}}});
    EXPECT_NEAR(v.real(), 1.0, 1e-15);
    EXPECT_THROW(f.evaluate({{{1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}}}), NearSingularError);
}
