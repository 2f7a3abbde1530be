#include <gtest/gtest.h>

#include "kummer/gkz.hpp"

using namespace kummer;

namespace {

IntVector vec(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

bool is_zero_vector(const IntVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

TEST(Gkz, KummerVectorsLieInKernel) {
    const GkzData g = kummer_gkz();
    EXPECT_EQ(rank(g.a), 4U);
    for (const auto& b : kummer_kernel_vectors()) EXPECT_TRUE(is_zero_vector(multiply(g.a, b)));
    // row 2 of A·(0,0,0,0,1,-2,1): 1 - 2 + 1; row 4: 2·1 + 1·(-2)
    const auto image = multiply(g.a, vec({0, 0, 0, 0, 1, -2, 1}));
    EXPECT_EQ(image[1], 0);
    EXPECT_EQ(image[3], 0);
}

TEST(Gkz, KernelBasisGeneratesKummerVectors) {
    const GkzData g = kummer_gkz();
    const auto basis = kernel_basis(g.a);
    ASSERT_EQ(basis.size(), 3U);
    for (const auto& b : basis) EXPECT_TRUE(is_zero_vector(multiply(g.a, b)));
    for (const auto& v : kummer_kernel_vectors()) EXPECT_TRUE(lattice_coordinates(basis, v).has_value());
    EXPECT_FALSE(lattice_coordinates(basis, vec({1, 0, 0, 0, 0, 0, 0})).has_value());
}

TEST(Gkz, KernelBasisRejectsRankDeficient) {
    IntMatrix a{vec({1, 2, 3}), vec({2, 4, 6})};
    EXPECT_THROW(kernel_basis(a), std::invalid_argument);
    IntMatrix b{vec({2, 4, 6})};
    const auto basis = kernel_basis(b);
    EXPECT_EQ(basis.size(), 2U);
    // Saturation: (1,1,-1) is integral in ker but 2x(...) of nothing smaller.
    EXPECT_TRUE(lattice_coordinates(basis, vec({1, 1, -1})).has_value());
}

TEST(Gkz, EulerElimination) {
    const GkzData g = kummer_gkz();
    const SubstitutionTable t = kummer_substitution();
    EXPECT_TRUE(verify_euler_elimination(g, t));
    const auto solved = solve_euler_relations(g, t);
    ASSERT_EQ(solved.size(), 7U);
    for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(solved[j], t.theta_of[j]) << j;
    SubstitutionTable broken = t;
    broken.theta_of[3] = ThetaOperator::theta(Var::q);
    EXPECT_FALSE(verify_euler_elimination(g, broken));
}

TEST(Gkz, BoxOperatorFactorials) {
    const auto box = box_operator(vec({0, 0, 0, 1, -2, 1, 0}));
    EXPECT_EQ(box.plus, (std::vector<std::uint32_t>{0, 0, 0, 1, 0, 1, 0}));
    EXPECT_EQ(box.minus, (std::vector<std::uint32_t>{0, 0, 0, 0, 2, 0, 0}));
    const ThetaOperator tp = ThetaOperator::theta(Var::p);
    EXPECT_EQ(falling_factorial(tp, 2), compose(tp, tp) - tp);
    EXPECT_EQ(falling_factorial(tp, 1), tp);
}

TEST(Gkz, MonomialRewrite) {
    const SubstitutionTable t = kummer_substitution();
    EXPECT_EQ(monomial_in_pqr(vec({0, 0, 0, 0, 1, -2, 1}), t), (std::array<long, 3>{1, -2, 1}));
    EXPECT_EQ(monomial_in_pqr(vec({1, -1, -1, 0, 1, 0, 0}), t), (std::array<long, 3>{1, 0, 0}));
    EXPECT_THROW(monomial_in_pqr(vec({1, 0, 0, 0, 0, 0, 0}), t), std::invalid_argument);
}

TEST(Gkz, ReductionReproducesCanonicalOperators) {
    const SubstitutionTable t = kummer_substitution();
    const auto canonical = build_canonical_system();
    const auto vectors = kummer_kernel_vectors();
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(reduce_to_pqr(vectors[i], t), canonical[i]) << i;
}

TEST(Gkz, KernelBasisOperatorsAnnihilate) {
    const SubstitutionTable t = kummer_substitution();
    const TruncatedSeries u = period_series(12);
    for (const auto& b : kernel_basis(kummer_gkz().a)) {
        const ThetaOperator op = reduce_to_pqr(b, t);
        const std::uint32_t margin = op.coefficient_degree();
        EXPECT_TRUE(apply(op, u).vanishes_through(12 - std::max(margin, kDegreeSafetyMargin))) << op.to_string();
    }
}
