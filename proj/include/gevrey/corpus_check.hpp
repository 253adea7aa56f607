#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "pipeline.hpp"

namespace gevrey {

struct CaseCheck {
    std::string id;
    bool passed = false;
    std::vector<std::string> problems;
};

namespace detail {

template <class T>
std::string join(const std::vector<T>& v, auto&& fmt) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
    return out + "}";
}

inline std::string format_support(const std::vector<SupportPoint>& v) {
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    return join(sorted, [](const SupportPoint& p) { return "(" + std::to_string(p.k) + "," + p.j0.to_string() + ")"; });
}

inline std::string format_rationals(const std::vector<Rational>& v) {
    return join(v, [](const Rational& r) { return r.get_str(); });
}

} // namespace detail

/// True when the residual leading exponent drops at every one of the first
/// `steps` extension steps.
inline bool residual_strictly_decreasing(const ExtendedSolution& sol, std::size_t steps) {
    if (sol.steps.size() < steps) return false;
    for (std::size_t i = 0; i < steps; ++i) {
        if (!sol.steps[i].residual_attained) return false;
        if (i > 0 && !(sol.steps[i].residual_leading < sol.steps[i - 1].residual_leading)) return false;
    }
    return true;
}

/// Runs the full pipeline on one case and compares against its recorded
/// expectations.
inline CaseCheck check_case(const CorpusCase& c, std::size_t n = 12) {
    CaseCheck out{c.id, false, {}};
    try {
        const DiffSum f = working_equation(c);
        const Classification cl = classify(f, c.seed, n);
        if (!residual_strictly_decreasing(cl.solution, n))
            out.problems.push_back("residual order does not drop at every one of " + std::to_string(n) + " steps");

        auto got = cl.polygon.support;
        auto want = c.expected_support;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want)
            out.problems.push_back("support " + detail::format_support(got) + " != expected " +
                                   detail::format_support(want));
        if (cl.polygon.positive_slopes != c.expected_slopes)
            out.problems.push_back("slopes " + detail::format_rationals(cl.polygon.positive_slopes) + " != expected " +
                                   detail::format_rationals(c.expected_slopes));
        if (cl.candidates != c.expected_candidates)
            out.problems.push_back("candidates " + detail::format_rationals(cl.candidates) + " != expected " +
                                   detail::format_rationals(c.expected_candidates));
    } catch (const std::exception& e) {
        out.problems.push_back(e.what());
    }
    out.passed = out.problems.empty();
    return out;
}

/// Checks every case concurrently; results are ordered by case id.
inline std::vector<CaseCheck> check_corpus(const std::vector<CorpusCase>& cases, std::size_t n = 12) {
    std::vector<std::future<CaseCheck>> jobs;
    jobs.reserve(cases.size());
    for (const auto& c : cases) jobs.push_back(std::async(std::launch::async, [&c, n] { return check_case(c, n); }));
    std::vector<CaseCheck> out;
    for (auto& j : jobs) out.push_back(j.get());
    std::sort(out.begin(), out.end(), [](const CaseCheck& a, const CaseCheck& b) { return a.id < b.id; });
    return out;
}

} // namespace gevrey
