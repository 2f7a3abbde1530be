#include <gtest/gtest.h>

#include <random>

#include "kummer/power_series.hpp"

using namespace kummer;

TEST(PeriodCoefficient, LowOrderValues) {
    EXPECT_EQ(period_coefficient({0, 0, 0}), BigRational(1));
    EXPECT_EQ(period_coefficient({1, 0, 0}), BigRational(1, 4));
    EXPECT_EQ(period_coefficient({0, 1, 0}), BigRational(9, 32));
    EXPECT_EQ(period_coefficient({0, 0, 1}), BigRational(75, 256));
    EXPECT_EQ(period_coefficient({2, 0, 0}), BigRational(9, 64));
}

TEST(PeriodCoefficient, MatchesResidueExpansion) {
    for (const auto& e : indices_up_to(6)) {
        const BigRational c = period_coefficient(e);
        EXPECT_EQ(c, residue_oracle(e)) << e[0] << "," << e[1] << "," << e[2];
        EXPECT_GT(c.sign(), 0);
    }
}

TEST(PeriodSeries, SmallCaps) {
    EXPECT_EQ(period_series(0).to_poly(), parse_poly("1"));
    EXPECT_EQ(period_series(1).to_poly(), parse_poly("1 + 1/4 * p + 9/32 * q + 75/256 * r"));
    // Truncation is by plain total degree; the part of weighted degree
    // l + 2m + 3n <= 2 is the familiar 1 + p/4 + 9p^2/64 + 9q/32.
    const TruncatedSeries full = period_series(2);
    TruncatedSeries weighted(2);
    for (const auto& [e, c] : full.terms())
        if (e[0] + 2 * e[1] + 3 * e[2] <= 2) weighted.add_term(e, c);
    EXPECT_EQ(weighted.to_poly(), parse_poly("1 + 9/32 * q + 1/4 * p + 9/64 * p^2"));
    EXPECT_EQ(period_series(5).terms().size(), indices_up_to(5).size());
}

TEST(SeriesArith, TruncationAndMonomials) {
    const auto one = TruncatedSeries::from_poly(parse_poly("1"), 3);
    EXPECT_EQ(one.times_monomial({1, 2, 0}).to_poly(), parse_poly("p q^2"));
    EXPECT_TRUE(one.truncated(2).times_monomial({1, 2, 0}).is_zero());
    const auto a = TruncatedSeries::from_poly(parse_poly("1 + p"), 2);
    const auto b = TruncatedSeries::from_poly(parse_poly("1 - p"), 2);
    EXPECT_EQ((a * b).to_poly(), parse_poly("1 - p^2"));
    EXPECT_EQ(a + TruncatedSeries(2), a);
    EXPECT_THROW(a + one, std::invalid_argument);
}

TEST(SeriesArith, MultiplicationMatchesPolynomialProduct) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> deg(0, 4), coef(-20, 20);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<MultiPoly::Term> ta, tb;
        for (int i = 0; i < 6; ++i) {
            ta.push_back({{(std::uint32_t)deg(rng), (std::uint32_t)deg(rng), (std::uint32_t)deg(rng)}, BigRational(coef(rng))});
            tb.push_back({{(std::uint32_t)deg(rng), (std::uint32_t)deg(rng), (std::uint32_t)deg(rng)}, BigRational(coef(rng))});
        }
        const MultiPoly a = MultiPoly::from_terms(ta), b = MultiPoly::from_terms(tb);
        const std::uint32_t cap = 7;
        EXPECT_EQ(TruncatedSeries::from_poly(a, cap) * TruncatedSeries::from_poly(b, cap),
                  TruncatedSeries::from_poly(a * b, cap));
    }
}

TEST(EvaluateSeries, TailProxy) {
    const auto one = TruncatedSeries::from_poly(parse_poly("1"), 4);
    auto v = evaluate_series(one, {{{0.3, 0.0}, {0.1, 0.0}, {0.2, 0.0}}});
    EXPECT_DOUBLE_EQ(v.value.real(), 1.0);
    EXPECT_DOUBLE_EQ(v.tail, 0.0);
    v = evaluate_series(period_series(1), {{{0.01, 0.0}, {0.0, 0.0}, {0.0, 0.0}}});
    EXPECT_NEAR(v.value.real(), 1.0025, 1e-15);
    EXPECT_NEAR(v.tail, 0.0025, 1e-15);
    const std::array<std::complex<double>, 3> x{{{1e-2, 0.0}, {1e-2, 0.0}, {1e-2, 0.0}}};
    const auto v20 = evaluate_series(period_series(20), x);
    const auto v24 = evaluate_series(period_series(24), x);
    EXPECT_LT(v20.tail, 1e-20);
    EXPECT_NEAR(std::abs(v20.value - v24.value), 0.0, 1e-15);
}
