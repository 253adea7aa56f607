#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace gevrey;
using namespace gevrey::testing;

namespace {

std::vector<SupportPoint> sorted(std::vector<SupportPoint> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<SupportPoint> pts(std::initializer_list<std::pair<int, long>> list) {
    std::vector<SupportPoint> out;
    for (const auto& [k, j] : list) out.push_back({k, ex(j)});
    return out;
}

} // namespace

TEST(Corpus, CoversEveryFamily) {
    const auto cases = corpus();
    EXPECT_GE(cases.size(), 7u);
    std::set<std::string> ids, families;
    for (const auto& c : cases) {
        EXPECT_TRUE(ids.insert(c.id).second) << "duplicate " << c.id;
        families.insert(c.family);
        EXPECT_FALSE(c.source.empty());
    }
    EXPECT_EQ(families, (std::set<std::string>{"P5", "P5-delta0", "P3"}));
    for (const auto* prefix : {"P5-A-6", "P5-A-7", "P5-B-8", "P5-C-9", "P5-C-10", "P3-A-13"})
        EXPECT_TRUE(std::any_of(cases.begin(), cases.end(), [&](const CorpusCase& c) { return c.id.rfind(prefix, 0) == 0; }))
            << prefix;
}

TEST(Corpus, PresetRadicalsAreExact) {
    EXPECT_EQ(find_case(corpus(), "P5-B-8-l2").seed.leading_coefficient(), gr(1));
    EXPECT_EQ(find_case(corpus(), "P5-C-10-l4").seed.leading_coefficient(), gr(1));
    EXPECT_EQ(find_case(corpus(), "P5-C-9-l4").seed.leading_coefficient(), gr(2));
    EXPECT_EQ(find_case(corpus(), "P3-A-13-l4").seed.leading_coefficient(), gr(2));
    EXPECT_EQ(find_case(corpus(), "P3-A-13-l1").seed.leading_coefficient(), gr(0, 2));
    EXPECT_EQ(find_case(corpus(), "P3-A-13-l4").seed.prescribed.at(ex(-1)), q(-3, 2));
}

TEST(Corpus, EverySeedBalancesAtLeadingOrder) {
    for (const auto& c : corpus()) EXPECT_NO_THROW(extend(working_equation(c), c.seed, 1)) << c.id;
}

TEST(Corpus, EveryCasePassesItsExpectations) {
    for (const auto& r : check_corpus(corpus())) {
        EXPECT_TRUE(r.passed) << r.id;
        for (const auto& why : r.problems) ADD_FAILURE() << r.id << ": " << why;
    }
}

TEST(Corpus, CheckReportsCorruptedExpectation) {
    auto cases = corpus();
    cases[0].expected_support[0].j0 = ex(7);
    const auto results = check_corpus(cases);
    const auto it = std::find_if(results.begin(), results.end(), [&](const CaseCheck& r) { return r.id == cases[0].id; });
    ASSERT_NE(it, results.end());
    EXPECT_FALSE(it->passed);
    EXPECT_EQ(std::count_if(results.begin(), results.end(), [](const CaseCheck& r) { return !r.passed; }), 1);
}

TEST(Corpus, WeightedAndEulerSupports) {
    const CorpusCase& bounded = find_case(corpus(), "P5-A-7");
    const Classification a = classify(working_equation(bounded), bounded.seed, 4);
    EXPECT_EQ(sorted(a.polygon.support), pts({{0, -2}, {1, 0}, {2, 0}}));
    EXPECT_EQ(sorted(a.euler_polygon.support), pts({{0, -2}, {1, 1}, {2, 0}}));
    EXPECT_EQ(a.polygon.vertices, a.euler_polygon.vertices);

    const CorpusCase& third = find_case(corpus(), "P3-A-13-l4");
    const Classification b = classify(working_equation(third), third.seed, 2);
    EXPECT_EQ(sorted(b.polygon.support), pts({{0, -1}, {1, 1}, {2, 1}}));
    EXPECT_EQ(sorted(b.euler_polygon.support), pts({{0, -1}, {1, 2}, {2, 1}}));
    EXPECT_EQ(b.euler_polygon.positive_slopes, std::vector<Rational>{Rational(1)});
}

TEST(Corpus, SupportsInTheWorkingVariable) {
    const std::map<std::string, std::vector<SupportPoint>> expected{
        {"P5-A-6-l1", pts({{0, -1}, {1, 1}, {2, 1}})},  {"P5-A-7", pts({{0, -2}, {1, 0}, {2, 0}})},
        {"P5-B-8-l2", pts({{0, -4}, {1, -2}, {2, -2}})}, {"P5-C-10-l3", pts({{0, -4}, {1, -2}, {2, -2}})},
        {"P5-C-9-l3", pts({{0, -1}, {1, 1}, {2, 1}})},  {"P3-A-13-l4", pts({{0, -1}, {1, 1}, {2, 1}})},
    };
    for (const auto& [id, want] : expected) {
        const CorpusCase& c = find_case(corpus(), id);
        const Classification cl = classify(working_equation(c), c.seed, 6);
        EXPECT_EQ(sorted(cl.polygon.support), want) << id;
        EXPECT_EQ(cl.candidates, (std::vector<Rational>{Rational(0), Rational(1)})) << id;
    }
}

TEST(Corpus, DeltaZeroCasesAreSolvedInSquareRoot) {
    for (const auto& c : corpus()) {
        if (c.family != "P5-delta0") continue;
        EXPECT_EQ(c.substitution, 2);
        EXPECT_EQ(working_equation(c).variable(), 't');
    }
}
