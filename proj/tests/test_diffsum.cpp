#include <set>

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace gevrey;
using namespace gevrey::testing;

TEST(Parse, PainleveFifthHasOrderTwo) {
    const DiffSum f = parse_diffsum("-z^2*w*(w-1)*w'' + z^2*(3/2*w - 1/2)*w'^2");
    EXPECT_EQ(f.order(), 2);
    EXPECT_EQ(f.terms().size(), 4u);
}

TEST(Parse, SingleW) {
    const DiffSum f = parse_diffsum("w");
    EXPECT_EQ(f.order(), 0);
    ASSERT_EQ(f.monomials().size(), 1u);
    EXPECT_EQ(f.monomials()[0].coeff, gr(1));
}

TEST(Parse, BoundParameters) {
    const Bindings b{{"a", gr(4)}, {"b", gr(8)}, {"g", gr(1)}, {"d", gr(-16)}};
    const DiffSum f = parse_diffsum("-z*w*w'' + z*w'^2 - w*w' + w*(a*w^2+b) + g*z*w^4 + d*z", b);
    EXPECT_EQ(f.order(), 2);
    EXPECT_EQ(f, parse_diffsum("-z*w*w'' + z*w'^2 - w*w' + 4*w^3 + 8*w + z*w^4 - 16*z"));
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse_diffsum("w'{10}"), ParseError);
    EXPECT_THROW(parse_diffsum("w +* z"), ParseError);
    EXPECT_THROW(parse_diffsum("z*t"), ParseError);
    EXPECT_THROW(parse_diffsum("alpha*w"), ParseError);
    EXPECT_THROW(parse_diffsum("(w+1"), ParseError);
    EXPECT_THROW(parse_diffsum("w^(1/2)"), ParseError);
    try {
        parse_diffsum("w + ) z");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(Parse, DerivativeNotations) {
    EXPECT_EQ(parse_diffsum("w'''"), parse_diffsum("w'{3}"));
    EXPECT_EQ(parse_diffsum("w'{9}").order(), 9);
    EXPECT_EQ(parse_diffsum("z^(-1/2)*w + z^-1"), DiffSum::independent(ex(-1, 2)) * DiffSum::derivative(0) +
                                                       DiffSum::independent(ex(-1)));
}

TEST(Parse, PrintParseFixpointOnCorpus) {
    for (const auto& c : corpus()) {
        const DiffSum f = working_equation(c);
        const std::string printed = to_string(f);
        const DiffSum again = parse_diffsum(printed);
        EXPECT_EQ(again, f) << c.id;
        EXPECT_EQ(to_string(again), printed) << c.id;
    }
}

TEST(Parse, PrintParseFixpointRandom) {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const DiffSum f = random_diffsum(rng);
        EXPECT_EQ(parse_diffsum(to_string(f)), f) << to_string(f);
    }
}

TEST(Evaluate, Examples) {
    EXPECT_TRUE(evaluate_on_series(parse_diffsum("w' - w"), PuiseuxSeries(1)).is_zero());
    const PuiseuxSeries r = evaluate_on_series(parse_diffsum("w''"), PuiseuxSeries::monomial(ex(-1, 2)));
    EXPECT_EQ(r, PuiseuxSeries::monomial(ex(-5, 2), q(3, 4)));
}

TEST(Evaluate, PainleveFifthOnTruncatedBoundedSeries) {
    const CorpusCase& c = find_case(corpus(), "P5-A-7");
    const DiffSum f = working_equation(c);
    // -1 + 4/z + 32/z^2 + ... engine-independent first two terms, then extend
    const PuiseuxSeries two(1, {{0, gr(-1)}, {-1, gr(4)}});
    const auto lead2 = evaluate_on_series(f, two).leading_exponent();
    ASSERT_TRUE(lead2.has_value());
    const ExtendedSolution sol = extend(f, c.seed, 2);
    EXPECT_EQ(sol.series, PuiseuxSeries(1, {{0, gr(-1)}, {-1, gr(4)}, {-2, gr(32)}, {-3, gr(-40)}}).truncated(ex(-3)));
    // independent symbolic substitution: F(-1 + 4/z + 32/z^2 - 40/z^3) = -992/z^2 + ...
    const PuiseuxSeries r4 = evaluate_on_series(f, sol.series.as_exact());
    ASSERT_TRUE(r4.leading_exponent().has_value());
    EXPECT_EQ(*r4.leading_exponent(), ex(-2));
    EXPECT_EQ(r4.leading_coefficient(), gr(-992));
    EXPECT_LT(*r4.leading_exponent(), *lead2);
}

TEST(Evaluate, FloorAgreesWithFullEvaluation) {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const DiffSum f = random_diffsum(rng);
        const PuiseuxSeries w = random_series(rng, 4, 1, -4, 1);
        const PuiseuxSeries full = evaluate_on_series(f, w);
        const RamifiedExponent floor(-3);
        const PuiseuxSeries cut = evaluate_on_series(f, w, floor);
        for (long e = 8; e >= -3; --e) EXPECT_EQ(cut.coefficient(ex(e)), full.coefficient(ex(e)));
    }
}

TEST(FirstVariation, Examples) {
    const CorpusCase& p5 = find_case(corpus(), "P5-A-7");
    const LinearDiffOperator v5 = first_variation(parse_diffsum(p5.equation, bindings(p5.parameters)));
    EXPECT_EQ(v5.coefficient(2), parse_diffsum("-z^2*w*(w-1)"));

    const CorpusCase& p3 = find_case(corpus(), "P3-A-13-l4");
    const LinearDiffOperator v3 = first_variation(working_equation(p3));
    EXPECT_EQ(v3.coefficient(1), parse_diffsum("2*z*w' - w"));

    const LinearDiffOperator sq = first_variation(parse_diffsum("w^2"));
    ASSERT_EQ(sq.coefficients.size(), 1u);
    EXPECT_EQ(sq.coefficient(0), parse_diffsum("2*w"));
}

// F(w + e h) - F(w) - e L[h] = O(e^2): the e-linear coefficient of F(w + e h)
// is recovered by exact Lagrange interpolation in e.
TEST(FirstVariation, LinearizesExactly) {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        const DiffSum f = random_diffsum(rng);
        const PuiseuxSeries w = random_series(rng, 3, 1, -2, 2);
        const PuiseuxSeries h = random_series(rng, 3, 1, -2, 2);
        const int d = std::max(1, f.degree());

        std::vector<PuiseuxSeries> values;
        for (int e = 0; e <= d; ++e)
            values.push_back(evaluate_on_series(f, series_add(w, series_scale(h, gr(e)))));
        const PuiseuxSeries linear = apply_operator(first_variation(f), w, h);

        std::set<std::int64_t> exps;
        for (const auto& v : values)
            for (const auto& [n, c] : v.terms()) exps.insert(n);
        for (const auto& [n, c] : linear.terms()) exps.insert(n);
        for (const auto n : exps) {
            std::vector<GaussianRational> at;
            for (const auto& v : values) at.push_back(v.coefficient(ex(n)));
            EXPECT_EQ(derivative_at_zero(at), linear.coefficient(ex(n))) << to_string(f) << " at z^" << n;
        }
    }
}

TEST(PartialHighest, Examples) {
    const CorpusCase& c = find_case(corpus(), "P5-A-7");
    const DiffSum f = working_equation(c);
    EXPECT_TRUE(partial_highest_nonzero(f, extend(f, c.seed, 3).series));
    EXPECT_TRUE(partial_highest_nonzero(parse_diffsum("w''"), PuiseuxSeries::monomial(ex(3), gr(2))));
    EXPECT_FALSE(partial_highest_nonzero(parse_diffsum("w*w''"), PuiseuxSeries(1)));
}

TEST(ChangeVariable, IdentityForMEqualsOne) {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const DiffSum f = random_diffsum(rng);
        EXPECT_EQ(change_variable(f, 1).sum, f);
        EXPECT_EQ(change_variable(change_variable(f, 1).sum, 2).sum, change_variable(f, 2).sum);
    }
}

TEST(ChangeVariable, ChainRule) {
    const ChangedVariable cv = change_variable(parse_diffsum("w'"), 2);
    EXPECT_EQ(cv.multiplier, ex(0));
    EXPECT_EQ(cv.sum, parse_diffsum("1/2*t^-1*w'"));
}

TEST(ChangeVariable, PainleveFifthDeltaZero) {
    const CorpusCase& c = find_case(corpus(), "P5-C-9-l4");
    const ChangedVariable cv = change_variable(parse_diffsum(c.equation, bindings(c.parameters)), 2);
    EXPECT_EQ(cv.multiplier, ex(0));
    const LinearDiffOperator v = first_variation(cv.sum);
    EXPECT_EQ(v.coefficient(2), parse_diffsum("-1/4*t^2*w*(w-1)"));
    EXPECT_EQ(v.coefficient(2).variable(), 't');
}

TEST(ChangeVariable, FractionalPowersClearedByOneMonomial) {
    // z^(1/2) w' -> t^(3/2) t^-2 w'/3, cleared by t^(-1/2)
    const ChangedVariable cv = change_variable(parse_diffsum("z^(1/2)*w' + z^(5/6)*w"), 3);
    EXPECT_EQ(cv.multiplier, ex(-1, 2));
    EXPECT_EQ(cv.sum, parse_diffsum("1/3*t^-1*w' + t^2*w"));
    EXPECT_THROW(change_variable(parse_diffsum("z^(1/2)*w + w'"), 3), std::invalid_argument);
}

// F_t(w(t)) = t^multiplier * F(w)(z)|_{z = t^2} for w(t) = v(sqrt z).
TEST(ChangeVariable, AgreesWithSubstitution) {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const DiffSum f = random_diffsum(rng);
        const ChangedVariable cv = change_variable(f, 2);
        const PuiseuxSeries wt = random_series(rng, 4, 1, -5, 2);
        const PuiseuxSeries wz(2, wt.terms());
        const PuiseuxSeries lhs = evaluate_on_series(cv.sum, wt);
        const PuiseuxSeries rhs =
            series_mul(PuiseuxSeries::monomial(cv.multiplier), substitute_power(evaluate_on_series(f, wz), 2));
        EXPECT_EQ(lhs, rhs) << to_string(f);
    }
}
