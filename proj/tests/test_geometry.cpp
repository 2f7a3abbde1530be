#include <gtest/gtest.h>

#include <random>

#include "kummer/geometry.hpp"

using namespace kummer;

namespace {

BigRational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-40, 40), den(1, 17);
    return BigRational(num(rng), den(rng));
}

using Names = std::vector<std::string>;

Names names(const DivisorReport& r) { return r.on; }

}  // namespace

TEST(LambdaMap, SharedFactorsVanish) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        const BigRational a = random_rational(rng), c = random_rational(rng);
        if (a == c || a == 0 || a == 1) continue;
        const auto pqr = lambda_to_pqr({a, a, c});
        EXPECT_TRUE(pqr[1].is_zero());
        EXPECT_TRUE(pqr[2].is_zero());
        const auto pqr1 = lambda_to_pqr({c, a, BigRational(1)});
        if (c != 1) {
            EXPECT_TRUE(pqr1[1].is_zero());
            EXPECT_TRUE(pqr1[2].is_zero());
        }
    }
    EXPECT_THROW(lambda_to_pqr({BigRational(2), BigRational(1), BigRational(3)}), std::domain_error);
}

TEST(LambdaMap, RIsSquareOfQCofactor) {
    const LambdaMap& m = lambda_map();
    const LambdaPoly l1 = LambdaPoly::variable(0), l2 = LambdaPoly::variable(1), l3 = LambdaPoly::variable(2);
    const LambdaPoly linear = l1 - l2 + l1 * l2 + l3 - LambdaPoly::constant(3) * l1 * l3 + l2 * l3;
    const auto shared = m.q_num.divide_exact(linear);
    ASSERT_TRUE(shared.has_value());
    EXPECT_EQ(*shared * *shared, m.r_num);
}

TEST(LambdaMap, ExactAndFloatAgree) {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        const std::array<BigRational, 3> l{random_rational(rng), random_rational(rng), random_rational(rng)};
        if (lambda_map().d.evaluate(l).is_zero()) continue;
        const auto exact = lambda_to_pqr(l);
        const auto approx = lambda_to_pqr(std::array<std::complex<double>, 3>{l[0].to_double(), l[1].to_double(), l[2].to_double()});
        for (std::size_t k = 0; k < 3; ++k)
            EXPECT_NEAR(std::abs(approx[k] - exact[k].to_double()), 0.0, 1e-9 * (1 + std::abs(exact[k].to_double())));
    }
}

TEST(TMap, OriginChart) {
    const auto t = pqrb_to_t({0, 0, 0, 1});
    EXPECT_EQ(t[0], BigRational(-1, 3));
    EXPECT_EQ(t[1], BigRational(-2, 27));
    EXPECT_EQ(t[2], BigRational(0));
    EXPECT_EQ(t[3], BigRational(0));
    EXPECT_EQ(pqrb_to_t({3, -2, 0, 5})[2], BigRational(0));
}

TEST(TMap, WeightedHomogeneity) {
    EXPECT_TRUE(scaling_identity());
    const auto& t = t_polynomials();
    for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(is_weighted_homogeneous(t[i], kTWeights[i])) << i;
    EXPECT_FALSE(is_weighted_homogeneous(t[0] + WeightedPoly::variable(0), 4));
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const std::array<BigRational, 4> x{random_rational(rng), random_rational(rng), random_rational(rng),
                                           random_rational(rng)};
        BigRational s = random_rational(rng);
        if (s.is_zero()) s = 3;
        const BigRational s2 = s * s;
        const auto base = pqrb_to_t(x);
        const auto scaled = pqrb_to_t({s2 * x[0], s2 * s2 * x[1], s2 * s2 * s2 * x[2], s2 * x[3]});
        for (std::size_t i = 0; i < 4; ++i) {
            BigRational factor(1);
            for (std::uint32_t k = 0; k < kTWeights[i]; ++k) factor *= s;
            EXPECT_EQ(scaled[i], factor * base[i]);
        }
    }
}

TEST(Discriminant, Factorization) { EXPECT_TRUE(discriminant_factorization()); }

TEST(Discriminant, DivisorsAreNegatedCubicDiscriminants) {
    const MultiPoly p = var_poly(Var::p), q = var_poly(Var::q), r = var_poly(Var::r);
    EXPECT_EQ(divisor_d3(), -cubic_discriminant(p, q, r));
    EXPECT_EQ(divisor_d2(), -cubic_discriminant(p - MultiPoly::constant(1), q, r));
}

TEST(Divisors, Membership) {
    EXPECT_EQ(divisor_d2().evaluate<BigRational>({0, 1, 1}), BigRational(44));
    EXPECT_EQ(divisor_d3().evaluate<BigRational>({0, 1, 1}), BigRational(31));
    EXPECT_EQ(names(singular_divisor_membership(std::array<BigRational, 3>{0, 1, 1})), Names{"p"});
    EXPECT_EQ(names(singular_divisor_membership(std::array<BigRational, 3>{1, 0, 0})), (Names{"q", "r", "d2", "d3"}));
    EXPECT_TRUE(singular_divisor_membership(std::array<BigRational, 3>{BigRational(3, 7), BigRational(-2, 5), BigRational(1, 9)}).on.empty());
    const auto f = singular_divisor_membership(std::array<std::complex<double>, 3>{{{1.0, 0.0}, {0.0, 0.0}, {1e-30, 0.0}}});
    EXPECT_EQ(f.on, (Names{"q", "r", "d2", "d3"}));
    // At (1,1,1) a polynomial evaluates to the sum of its coefficients.
    const MultiPoly d1 = divisor_d1();
    BigRational coefficient_sum(0);
    for (const auto& t : d1.terms()) coefficient_sum += t.coeff;
    EXPECT_EQ(coefficient_sum, BigRational(-1 + 2 - 4 + 15 - 15 + 6 + 12 - 36 + 24 - 81));
    EXPECT_EQ(divisor_d1().evaluate<BigRational>({1, 1, 1}), BigRational(-78));
    EXPECT_EQ(divisor_d3().evaluate<BigRational>({0, 0, 1}), BigRational(27));
}
