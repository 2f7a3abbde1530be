#include <gtest/gtest.h>

#include <random>

#include "kummer/operator_algebra.hpp"

using namespace kummer;

namespace {

const ThetaOperator tp = ThetaOperator::theta(Var::p);
const ThetaOperator tq = ThetaOperator::theta(Var::q);
const ThetaOperator tr = ThetaOperator::theta(Var::r);

ThetaOperator poly_op(const char* s) { return ThetaOperator(parse_poly(s)); }

ThetaOperator random_operator(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> small(0, 2), coef(-5, 5);
    ThetaOperator op;
    for (int i = 0; i < 3; ++i) {
        const Exponent3 th{(std::uint32_t)small(rng), (std::uint32_t)small(rng), (std::uint32_t)small(rng)};
        const Exponent3 mono{(std::uint32_t)small(rng), (std::uint32_t)small(rng), (std::uint32_t)small(rng)};
        op = op + ThetaOperator::term(th, MultiPoly::monomial(mono, BigRational(coef(rng))));
    }
    return op;
}

}  // namespace

TEST(Compose, CommutationRule) {
    EXPECT_EQ(compose(tp, poly_op("p")), ThetaOperator::term({1, 0, 0}, parse_poly("p")) + poly_op("p"));
    EXPECT_EQ(compose(tp, tq), compose(tq, tp));
    EXPECT_EQ(compose(tp, parse_poly("p^2 q") * tr),
              ThetaOperator::term({1, 0, 1}, parse_poly("p^2 q")) + ThetaOperator::term({0, 0, 1}, parse_poly("2 * p^2 q")));
}

TEST(Compose, AssociativeAndConsistentWithApply) {
    std::mt19937_64 rng(5);
    const TruncatedSeries s = period_series(9);
    for (int trial = 0; trial < 10; ++trial) {
        const ThetaOperator a = random_operator(rng), b = random_operator(rng), c = random_operator(rng);
        EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
        EXPECT_EQ(apply(compose(a, b), s), apply(a, apply(b, s)));
    }
}

TEST(Apply, DiagonalAction) {
    EXPECT_TRUE(apply(tp, TruncatedSeries::from_poly(parse_poly("1"), 3)).is_zero());
    EXPECT_EQ(apply(tq, TruncatedSeries::from_poly(parse_poly("q"), 3)).to_poly(), parse_poly("q"));
    EXPECT_EQ(apply(parse_poly("q^2") * compose(tp, tr), TruncatedSeries::from_poly(parse_poly("p r"), 4)).to_poly(),
              parse_poly("p q^2 r"));
    // θ_v x^e = e_v x^e for every generator
    for (const auto& e : indices_up_to(4)) {
        const auto mono = TruncatedSeries::from_poly(MultiPoly::monomial(e, BigRational(1)), 4);
        for (std::size_t v = 0; v < 3; ++v) {
            const auto img = apply(ThetaOperator::theta(static_cast<Var>(v)), mono);
            EXPECT_EQ(img, mono.scaled(BigRational(static_cast<long>(e[v]))));
        }
    }
}

TEST(CanonicalSystem, NormalForms) {
    const auto ops = build_canonical_system();
    ASSERT_EQ(ops.size(), 5U);
    EXPECT_EQ(ops[0].coefficient({1, 0, 1}), parse_poly("q^2"));
    EXPECT_EQ(ops[0].coefficient({0, 2, 0}), parse_poly("-1 * p r"));
    EXPECT_EQ(ops[0].coefficient({0, 1, 0}), parse_poly("p r"));
    EXPECT_EQ(ops[2].coefficient({0, 0, 0}), parse_poly("-1/4 * p"));
    EXPECT_EQ(ops[2].coefficient({2, 0, 0}), parse_poly("1 - p"));
    EXPECT_EQ(ops[4].coefficient({0, 1, 1}), parse_poly("-4 * p^2 q + 24 * p^2 r + 16 * p q^2 - 12 * p r"));
    EXPECT_EQ(ops[4].coefficient({0, 0, 1}), parse_poly("p q^2"));
    for (const auto& op : ops) {
        EXPECT_EQ(op.order(), 2U);
        EXPECT_LE(op.coefficient_degree(), kDegreeSafetyMargin);
    }
}

TEST(CanonicalSystem, AnnihilatesPeriodSeries) {
    const TruncatedSeries u = period_series(10);
    for (const auto& op : build_canonical_system()) EXPECT_TRUE(apply(op, u).vanishes_through(7)) << op.to_string();
}

TEST(CanonicalSystem, ConstantsAreNotSolutions) {
    const auto ops = build_canonical_system();
    const auto image = apply(ops[2], TruncatedSeries::from_poly(parse_poly("1"), 4));
    EXPECT_EQ(image.to_poly(), parse_poly("-1/4 * p"));
}

TEST(IdentityCheck, QuinticVanishes) {
    const auto expansion = identity_expansion();
    EXPECT_TRUE(expansion.is_zero()) << to_string<3>(expansion, {"l", "m", "n"});
}

TEST(IdentityCheck, TermsAtOrigin) {
    // The five summands at (l,m,n) = (0,0,0), evaluated independently.
    const long l = 0, m = 0, n = 0;
    const long s4 = l + 2 * m + 3 * n - 4, w = 2 * l + 4 * m + 6 * n - 9;
    const long t1 = 9 * (2 * n - 1) * (m + 2 * n - 2) * s4;
    const long t2 = -w * w * (2 * m + 3 * n - 3);
    const long t3 = -w * w * (l - 1);
    const long t4 = 4 * (l - 1) * s4 * (l + 4 * m + 6 * n - 8);
    const long t5 = (m - 1) * s4 * (16 * m + 30 * n - 31);
    EXPECT_EQ(t1, -72);
    EXPECT_EQ(t2, 243);
    EXPECT_EQ(t3, 81);
    EXPECT_EQ(t4, -128);
    EXPECT_EQ(t5, -124);
    EXPECT_EQ(t1 + t2 + t3 + t4 + t5, 0);
}
