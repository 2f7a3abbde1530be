#include <gtest/gtest.h>

#include "kummer/transport.hpp"

using namespace kummer;

namespace {

const PfaffianSystem& system5() {
    static const PfaffianSystem s = *derive_pfaffian(build_canonical_system(), rank5_basis()).system;
    return s;
}

const CompiledPfaffian& omega() {
    static const CompiledPfaffian c(system5());
    return c;
}

double identity_defect(const CMatrix& m) { return (m - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff(); }

Path square(const Point& base, Complex dp, Complex dq) {
    Point b1 = base, b2 = base, b3 = base;
    b1[0] += dp;
    b2[0] += dp;
    b2[1] += dq;
    b3[1] += dq;
    return Path{{Segment::line(base, b1), Segment::line(b1, b2), Segment::line(b2, b3), Segment::line(b3, base)}};
}

const Point kBase{0.3, 0.2, 0.01};

}  // namespace

TEST(InitialState, SeriesValues) {
    const auto basis = rank5_basis();
    const CVector origin = initial_state(basis, {0.0, 0.0, 0.0}, 8);
    EXPECT_EQ(origin(0), Complex(1.0));
    for (int j = 1; j < 5; ++j) EXPECT_EQ(origin(j), Complex(0.0));

    const CVector v = initial_state(basis, {1e-3, 0.0, 0.0}, 12, 1e-30);
    // u = 1 + p/4 + 9p²/64 + 25p³/256 + … on the p-axis.
    EXPECT_NEAR(std::abs(v(0) - (1.0 + 2.5e-4 + 9.0 / 64.0 * 1e-6 + 25.0 / 256.0 * 1e-9)), 0.0, 1e-12);
    EXPECT_EQ(v(2), Complex(0.0));
    EXPECT_EQ(v(3), Complex(0.0));
    EXPECT_NEAR(std::abs(v(1) - (2.5e-4 + 18.0 / 64.0 * 1e-6 + 75.0 / 256.0 * 1e-9)), 0.0, 1e-12);

    EXPECT_THROW(initial_state(basis, {0.2, 0.2, 0.2}, 2), SeriesTailError);
}

TEST(Transport, ZeroLengthAndReversal) {
    const TransportResult still = fundamental_matrix(omega(), Path{{Segment::line(kBase, kBase)}});
    EXPECT_EQ(identity_defect(still.state), 0.0);

    const Point far{Complex(0.25, 0.05), Complex(0.22, -0.03), Complex(0.012, 0.004)};
    const Path there{{Segment::line(kBase, far)}};
    TransportOptions o;
    o.tol = 1e-10;
    const CMatrix forward = fundamental_matrix(omega(), there, o).state;
    const CMatrix back = fundamental_matrix(omega(), there.reversed(), o).state;
    EXPECT_LT(identity_defect(back * forward), 10 * o.tol);
}

TEST(Transport, ContractibleLoopAndConvergence) {
    const Path loop = square(kBase, 0.05, Complex(0.0, 0.05));
    TransportOptions o;
    o.tol = 1e-10;
    const Monodromy m = monodromy(omega(), loop, o);
    EXPECT_LT(identity_defect(m.matrix), 1e2 * o.tol);
    EXPECT_LT(std::abs(m.det - m.liouville), 1e-6);

    TransportOptions coarse, fine;
    coarse.tol = 1e-4;
    fine.tol = 1e-6;
    const double d_coarse = identity_defect(fundamental_matrix(omega(), loop, coarse).state);
    const double d_fine = identity_defect(fundamental_matrix(omega(), loop, fine).state);
    EXPECT_GT(d_coarse, 10 * d_fine) << d_coarse << " " << d_fine;
}

TEST(Transport, HomotopicPathsAgree) {
    Point corner_a = kBase, corner_b = kBase, target = kBase;
    corner_a[0] += 0.04;
    corner_b[1] += Complex(0.0, 0.04);
    target[0] += 0.04;
    target[1] += Complex(0.0, 0.04);
    const Path one{{Segment::line(kBase, corner_a), Segment::line(corner_a, target)}};
    const Path two{{Segment::line(kBase, corner_b), Segment::line(corner_b, target)}};
    TransportOptions o;
    o.tol = 1e-10;
    const CMatrix a = fundamental_matrix(omega(), one, o).state;
    const CMatrix b = fundamental_matrix(omega(), two, o).state;
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Transport, ClearanceIsEnforced) {
    Point across = kBase;
    across[1] = -0.2;
    EXPECT_THROW(fundamental_matrix(omega(), Path{{Segment::line(kBase, across)}}), ClearanceError);
    EXPECT_LT(clearance({1.0, 0.0, 0.0}), kDefaultClearance);
}

TEST(Monodromy, LoopAroundR) {
    Point center = kBase;
    center[2] = 0.0;
    const Path loop{{Segment::circle(center, Var::r, 0.01)}};
    TransportOptions o;
    o.tol = 1e-10;
    const Monodromy m = monodromy(omega(), loop, o);
    EXPECT_NEAR(std::abs(m.det), 1.0, 1e-6);
    EXPECT_LT(std::abs(m.det - m.liouville), 1e-6);
    EXPECT_GT(identity_defect(m.matrix), 1e-3);
    const Monodromy inverse = monodromy(omega(), loop.reversed(), o);
    EXPECT_LT(identity_defect(inverse.matrix * m.matrix), 1e-7);
    EXPECT_THROW(monodromy(omega(), Path{{Segment::line(kBase, center)}}), std::invalid_argument);
}

TEST(SeriesVsTransport, AgreesNearOrigin) {
    const double e = 1e-3;
    const Point a{Complex(0.6 * e, 0.1 * e), Complex(0.5 * e, 0.3 * e), Complex(0.4 * e, -0.2 * e)};
    const Point b{Complex(-0.3 * e, 0.5 * e), Complex(0.7 * e, 0.0), Complex(0.2 * e, 0.6 * e)};
    TransportOptions o;
    o.tol = 1e-10;
    EXPECT_EQ(series_vs_transport(omega(), system5().basis, a, a, 16, o), 0.0);
    EXPECT_LT(series_vs_transport(omega(), system5().basis, a, b, 16, o), 1e-8);
    // Mostly along r.
    const Point c{Complex(0.2 * e, 0.1 * e), Complex(0.3 * e, -0.1 * e), Complex(-0.9 * e, 0.4 * e)};
    EXPECT_LT(series_vs_transport(omega(), system5().basis, a, c, 20, o), 1e-6);
}
