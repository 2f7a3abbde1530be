#include <gtest/gtest.h>

#include <algorithm>

#include "kummer/geometry.hpp"
#include "kummer/pfaffian.hpp"

using namespace kummer;

namespace {

std::vector<ThetaOperator> gkz_relations() {
    auto ops = build_canonical_system();
    ops.pop_back();
    return ops;
}

const PfaffianSystem& theta_p2_system() {
    static const PfaffianSystem s = *derive_pfaffian(build_canonical_system(), rank5_basis()).system;
    return s;
}

const PfaffianSystem& q2_system() {
    static const PfaffianSystem s =
        *derive_pfaffian(build_canonical_system(), rank5_basis(BasisChoice::theta_q2)).system;
    return s;
}

RatFunc rf(const char* text) { return RatFunc::parse(text); }

}  // namespace

TEST(RewriteTable, RuleFromFirstRelation) {
    const RewriteTable t = build_rewrite_table(gkz_relations(), rank6_basis());
    ASSERT_EQ(t.rules.size(), 4U);
    // q² θpθr = pr θq(θq − 1) with θq² kept in the basis.
    const auto& rule = t.rules.at({1, 0, 1});
    const RatFunc c = RatFunc(parse_poly("p r"), parse_poly("q^2"));
    EXPECT_EQ(rule, (std::vector<RatFunc>{0, 0, -c, 0, 0, c}));
}

TEST(RewriteTable, RulesAnnihilateTheirSources) {
    const auto all = build_canonical_system();
    const RewriteTable t5 = build_rewrite_table(all, rank5_basis());
    EXPECT_EQ(t5.rules.size(), 5U);
    for (const auto& op : all)
        for (const auto& c : reduce_order2(t5, op)) EXPECT_TRUE(c.is_zero());
    const RewriteTable t6 = build_rewrite_table(gkz_relations(), rank6_basis());
    for (const auto& op : gkz_relations())
        for (const auto& c : reduce_order2(t6, op)) EXPECT_TRUE(c.is_zero());
}

TEST(RewriteTable, GkzAloneCannotReachRankFiveBasis) {
    EXPECT_THROW(build_rewrite_table(gkz_relations(), rank5_basis()), std::runtime_error);
}

TEST(Derive, RankFiveClosesWithStructureRows) {
    const PfaffianSystem& s = theta_p2_system();
    ASSERT_EQ(s.basis.size(), 5U);
    const RatMatrix tp = s.theta_matrix(Var::p), tq = s.theta_matrix(Var::q), tr = s.theta_matrix(Var::r);
    EXPECT_EQ(tp[0], (std::vector<RatFunc>{0, 1, 0, 0, 0}));
    EXPECT_EQ(tp[1], (std::vector<RatFunc>{0, 0, 0, 0, 1}));
    EXPECT_EQ(tq[0], (std::vector<RatFunc>{0, 0, 1, 0, 0}));
    EXPECT_EQ(tr[0], (std::vector<RatFunc>{0, 0, 0, 1, 0}));
    // ∂/∂p u = θp u / p.
    EXPECT_EQ(s.matrix(Var::p)[0][1], rf("(1)/(p)"));
    EXPECT_EQ(tp[2][0], RatFunc(parse_poly("p q") * parse_poly("-1 * q^3 + 8 * p q r + -4 * q r + 36 * r^2"),
                                parse_poly("8") * divisor_d1()));
}

TEST(Derive, GkzAloneIsUnderdeterminedForRankFiveBasis) {
    const Derivation d = derive_pfaffian(gkz_relations(), rank5_basis());
    EXPECT_EQ(d.status, Closure::underdetermined);
    EXPECT_FALSE(d.system.has_value());
    EXPECT_FALSE(d.undetermined.empty());
}

TEST(Derive, RankSixFromGkzAlone) {
    const Derivation d = derive_pfaffian(gkz_relations(), rank6_basis());
    ASSERT_EQ(d.status, Closure::closed);
    EXPECT_EQ(d.basis_relations, 0U);
    EXPECT_TRUE(check_integrability(*d.system).holds());
    EXPECT_EQ(series_consistency_failures(*d.system, 8), 0U);
}

TEST(Integrability, RankFiveHolds) {
    const IntegrabilityWitness w = check_integrability(theta_p2_system());
    EXPECT_EQ(w.residual(), 0U);
}

TEST(Integrability, PerturbationIsDetected) {
    PfaffianSystem s = theta_p2_system();
    s.m[index(Var::p)][2][3] += RatFunc(1);
    const IntegrabilityWitness w = check_integrability(s);
    EXPECT_GT(w.residual(), 0U);
    EXPECT_EQ(w.nonzero[1], 0U);  // the (q,r) identity does not involve M_p
}

TEST(Integrability, AlternateBasisHolds) { EXPECT_TRUE(check_integrability(q2_system()).holds()); }

TEST(SeriesConsistency, RankFive) {
    EXPECT_EQ(series_consistency_failures(theta_p2_system(), 10), 0U);
    PfaffianSystem broken = theta_p2_system();
    broken.m[index(Var::r)][4][0] += RatFunc(parse_poly("q"));
    EXPECT_GT(series_consistency_failures(broken, 10), 0U);
}

TEST(Singular, ThetaP2Basis) {
    const SingularReport s = singular_factors(theta_p2_system(), true);
    for (const char* name : {"p", "q", "d1", "d2", "d3"}) EXPECT_TRUE(s.contains(name)) << name;
    EXPECT_TRUE(s.unexpected.empty());
}

TEST(Singular, AlternateBasisDropsD1) {
    const SingularReport s = singular_factors(q2_system(), false);
    EXPECT_FALSE(s.contains("d1"));
    for (const char* name : {"p", "q", "d2", "d3"}) EXPECT_TRUE(s.contains(name)) << name;
    EXPECT_EQ(s.unexpected.size(), 1U);
    EXPECT_THROW(singular_factors(q2_system(), true), std::runtime_error);

    const SingularReport a = singular_factors(theta_p2_system(), true);
    std::vector<std::string> both;
    for (const auto& n : a.occurring)
        if (s.contains(n)) both.push_back(n);
    EXPECT_EQ(std::count(both.begin(), both.end(), "d1"), 0);
}

TEST(Fixture, MatchesDerivation) {
    const ReferenceFixture f = load_fixture(std::string(KUMMER_FIXTURE_DIR) + "/reference_pfaffian.json");
    EXPECT_EQ(f.d1, divisor_d1());
    EXPECT_EQ(f.d2, divisor_d2());
    EXPECT_EQ(f.d3, divisor_d3());
    EXPECT_EQ(f.theta[index(Var::q)][0][2], RatFunc(1));
    EXPECT_EQ(f.theta[index(Var::r)][0][3], RatFunc(1));
    const FixtureReport report = compare_fixture(theta_p2_system(), f);
    EXPECT_EQ(report.compared, 75U);
    EXPECT_TRUE(report.mismatches.empty()) << report.mismatches.size();
}

TEST(Fixture, JsonRoundTrip) {
    const PfaffianSystem& s = theta_p2_system();
    const PfaffianSystem back = pfaffian_from_json(to_json(s));
    EXPECT_EQ(back.basis, s.basis);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(back.m[i], s.m[i]);
}
