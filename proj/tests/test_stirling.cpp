#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace gevrey;
using namespace gevrey::testing;

namespace {

mpz_class falling(long m, int j) {
    mpz_class r = 1;
    for (int i = 0; i < j; ++i) r *= m - i;
    return r;
}

mpz_class power(long m, int j) {
    mpz_class r = 1;
    for (int i = 0; i < j; ++i) r *= m;
    return r;
}

OperatorOnSeries single(Basis basis, int order) {
    OperatorOnSeries op;
    op.basis = basis;
    op.coefficients.emplace(order, PuiseuxSeries::constant(gr(1)));
    return op;
}

} // namespace

TEST(Stirling, Examples) {
    for (int j = 0; j <= 12; ++j) EXPECT_EQ(stirling2(j, j), 1);
    EXPECT_EQ(stirling2(3, 2), 3);
    EXPECT_EQ(stirling2(4, 2), 7);
    EXPECT_EQ(stirling1_signed(3, 1), 2);
    EXPECT_EQ(stirling1_signed(3, 2), -3);
    EXPECT_EQ(stirling1_signed(4, 1), -6);
    EXPECT_EQ(stirling2(2, 5), 0);
}

TEST(Stirling, OutOfRange) {
    EXPECT_THROW(stirling2(-1, 0), std::out_of_range);
    EXPECT_THROW(stirling1_signed(21, 3), std::out_of_range);
    EXPECT_THROW(StirlingTables(21), std::out_of_range);
}

TEST(Stirling, MutuallyInverse) {
    for (int j = 0; j <= 12; ++j)
        for (int i = 0; i <= 12; ++i) {
            std::int64_t sum = 0;
            for (int k = 0; k <= 12; ++k) sum += stirling1_signed(j, k) * stirling2(k, i);
            EXPECT_EQ(sum, j == i ? 1 : 0) << j << "," << i;
        }
}

// z^j d^j z^m = (m)_j z^m and D^j z^m = m^j z^m.
TEST(Stirling, FallingFactorialOracle) {
    for (int j = 0; j <= 12; ++j)
        for (long m = 0; m <= 20; ++m) {
            mpz_class via_s1 = 0, via_s2 = 0;
            for (int k = 0; k <= j; ++k) {
                via_s1 += stirling1_signed(j, k) * power(m, k);
                via_s2 += stirling2(j, k) * falling(m, k);
            }
            EXPECT_EQ(via_s1, falling(m, j)) << j << "," << m;
            EXPECT_EQ(via_s2, power(m, j)) << j << "," << m;
        }
}

TEST(BasisChange, BothDirectionsActOnMonomials) {
    for (int j = 0; j <= 12; ++j) {
        const OperatorOnSeries weighted = single(Basis::weighted, j);
        const OperatorOnSeries euler = single(Basis::euler, j);
        const OperatorOnSeries to_e = to_euler_basis(weighted);
        const OperatorOnSeries to_w = from_euler_basis(euler);
        EXPECT_EQ(to_e.basis, Basis::euler);
        EXPECT_EQ(to_w.basis, Basis::weighted);
        for (long m = 0; m <= 20; ++m) {
            const PuiseuxSeries zm = PuiseuxSeries::monomial(ex(m));
            const PuiseuxSeries ff = series_scale(zm, GaussianRational(Rational(falling(m, j))));
            const PuiseuxSeries pw = series_scale(zm, GaussianRational(Rational(power(m, j))));
            EXPECT_EQ(apply_operator(weighted, zm), ff);
            EXPECT_EQ(apply_operator(to_e, zm), ff);
            EXPECT_EQ(apply_operator(euler, zm), pw);
            EXPECT_EQ(apply_operator(to_w, zm), pw);
        }
    }
}

TEST(BasisChange, Examples) {
    const OperatorOnSeries d1 = to_euler_basis(single(Basis::weighted, 1));
    ASSERT_EQ(d1.coefficients.size(), 1u);
    EXPECT_EQ(d1.coefficient(1), PuiseuxSeries::constant(gr(1)));

    const OperatorOnSeries d2 = to_euler_basis(single(Basis::weighted, 2));
    EXPECT_EQ(d2.coefficient(2), PuiseuxSeries::constant(gr(1)));
    EXPECT_EQ(d2.coefficient(1), PuiseuxSeries::constant(gr(-1)));
    EXPECT_TRUE(d2.coefficient(0).is_zero());

    const OperatorOnSeries back = from_euler_basis(single(Basis::euler, 2));
    EXPECT_EQ(back.coefficient(2), PuiseuxSeries::constant(gr(1)));
    EXPECT_EQ(back.coefficient(1), PuiseuxSeries::constant(gr(1)));
}

TEST(BasisChange, RoundTripWithSeriesCoefficients) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        OperatorOnSeries op;
        op.basis = Basis::weighted;
        for (int k = 0; k <= 4; ++k) op.coefficients.emplace(k, random_series(rng, 3, 1 + k % 2));
        const OperatorOnSeries back = from_euler_basis(to_euler_basis(op));
        for (int k = 0; k <= 4; ++k) EXPECT_EQ(back.coefficient(k), op.coefficient(k));
        const PuiseuxSeries h = random_series(rng, 3);
        EXPECT_EQ(apply_operator(to_euler_basis(op), h), apply_operator(op, h));
    }
}

TEST(BuildL0, LinearEulerEquation) {
    const OperatorOnSeries l0 = build_L0(parse_diffsum("z*w' - w"), PuiseuxSeries(1));
    EXPECT_EQ(l0.basis, Basis::euler);
    EXPECT_EQ(l0.coefficient(1), PuiseuxSeries::constant(gr(1)));
    EXPECT_EQ(l0.coefficient(0), PuiseuxSeries::constant(gr(-1)));
    const auto pts = support(l0);
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0], (SupportPoint{0, ex(0)}));
    EXPECT_EQ(pts[1], (SupportPoint{1, ex(0)}));
}

TEST(BuildL0, DegenerateLeadingCoefficient) {
    EXPECT_THROW(build_L0(parse_diffsum("w*w'' + w"), PuiseuxSeries(1)), DegenerateLeadingCoefficient);
}
