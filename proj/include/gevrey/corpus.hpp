#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffsum.hpp"
#include "diffsum_parser.hpp"
#include "newton_polygon.hpp"
#include "series_solver.hpp"

namespace gevrey {

struct ParameterSet {
    GaussianRational alpha;
    GaussianRational beta;
    GaussianRational gamma;
    GaussianRational delta;

    friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

/// Names under which parameters are bound when parsing an equation.
inline Bindings bindings(const ParameterSet& p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta},
            {"a", p.alpha},     {"b", p.beta},    {"g", p.gamma},     {"d", p.delta}};
}

/// Fifth Painleve equation multiplied by z^2 w (w-1), all terms on one side.
inline const char* const kPainleveV =
    "-z^2*w*(w-1)*w'' + z^2*(3/2*w - 1/2)*w'^2 - z*w*(w-1)*w' + (w-1)^3*(alpha*w^2 + beta)"
    " + gamma*z*w^2*(w-1) + delta*z^2*w^2*(w+1)";

/// Third Painleve equation multiplied by z w.
inline const char* const kPainleveIII = "-z*w*w'' + z*w'^2 - w*w' + w*(alpha*w^2 + beta) + gamma*z*w^4 + delta*z";

struct CorpusCase {
    std::string id;
    std::string family; // "P5", "P5-delta0", "P3" or free text for external cases
    std::string equation; // in z, with named parameters
    ParameterSet parameters;
    std::int64_t substitution = 1; // solve in t with z = t^m
    SeedExpansion seed;            // in the working variable
    std::vector<SupportPoint> expected_support;
    std::vector<Rational> expected_slopes;
    std::vector<Rational> expected_candidates;
    std::string source;
};

/// The equation in the working variable (t when substitution > 1).
inline DiffSum working_equation(const CorpusCase& c) {
    const DiffSum f = parse_diffsum(c.equation, bindings(c.parameters));
    return change_variable(f, c.substitution).sum;
}

namespace detail {

inline GaussianRational sqrt_or_throw(const GaussianRational& z, const std::string& what) {
    const auto r = exact_sqrt(z);
    if (!r) throw std::invalid_argument(what + " = sqrt(" + z.to_string() + ") is not a Gaussian rational");
    return *r;
}

inline GaussianRational sign_power(int l) { return GaussianRational(l % 2 == 0 ? 1 : -1); }

inline std::vector<SupportPoint> support_of(std::initializer_list<std::pair<int, long>> pts) {
    std::vector<SupportPoint> out;
    for (const auto& [k, j] : pts) out.push_back({k, RamifiedExponent(j)});
    return out;
}

inline SeedExpansion seed_of(std::int64_t rho, int branch,
                             std::initializer_list<std::pair<RamifiedExponent, GaussianRational>> terms) {
    SeedExpansion s;
    s.ramification = rho;
    s.branch = branch;
    for (const auto& [e, c] : terms) s.prescribed.emplace(e, c);
    return s;
}

inline CorpusCase make_case(std::string id, std::string family, const char* equation, ParameterSet p,
                            std::int64_t substitution, SeedExpansion seed, std::vector<SupportPoint> support,
                            std::string source) {
    CorpusCase c;
    c.id = std::move(id);
    c.family = std::move(family);
    c.equation = equation;
    c.parameters = std::move(p);
    c.substitution = substitution;
    c.seed = std::move(seed);
    c.expected_support = std::move(support);
    c.expected_slopes = {Rational(1)};
    c.expected_candidates = {Rational(0), Rational(1)};
    c.source = std::move(source);
    return c;
}

} // namespace detail

inline const ParameterSet& preset_p5a() {
    static const ParameterSet p{GaussianRational(1), GaussianRational(4), GaussianRational(2), GaussianRational(1)};
    return p;
}
inline const ParameterSet& preset_p5b() {
    static const ParameterSet p{GaussianRational(-1), GaussianRational(4), GaussianRational(2), GaussianRational(1)};
    return p;
}
inline const ParameterSet& preset_p5c() {
    static const ParameterSet p{GaussianRational(-1), GaussianRational(-4), GaussianRational(1), GaussianRational(0)};
    return p;
}
inline const ParameterSet& preset_p3a() {
    static const ParameterSet p{GaussianRational(4), GaussianRational(8), GaussianRational(1), GaussianRational(-16)};
    return p;
}

/// Leading coefficients and the closed-form second terms are evaluated from the
/// parameters with principal square/fourth roots.
inline std::vector<CorpusCase> corpus() {
    using detail::make_case;
    using detail::seed_of;
    using detail::sign_power;
    using detail::sqrt_or_throw;
    using detail::support_of;
    using G = GaussianRational;
    using E = RamifiedExponent;

    const auto irregular_top = support_of({{0, -1}, {1, 1}, {2, 1}});
    const auto constant_top = support_of({{0, -2}, {1, 0}, {2, 0}});
    const auto linear_top = support_of({{0, -4}, {1, -2}, {2, -2}});

    std::vector<CorpusCase> out;

    {   // w = (-1)^l sqrt(beta/delta)/z + (-2 beta/delta + (-1)^l gamma/(2 delta) sqrt(beta/delta))/z^2 + ...
        const ParameterSet& p = preset_p5a();
        const G root = sqrt_or_throw(p.beta / p.delta, "sqrt(beta/delta)");
        for (int l : {1, 2}) {
            const G c1 = sign_power(l) * root;
            const G c2 = G(-2) * p.beta / p.delta + sign_power(l) * p.gamma / (G(2) * p.delta) * root;
            out.push_back(make_case("P5-A-6-l" + std::to_string(l), "P5", kPainleveV, p, 1,
                                    seed_of(1, l, {{E(-1), c1}, {E(-2), c2}}), irregular_top,
                                    "P5 decaying branch w = (-1)^l sqrt(beta/delta)/z + O(1/z^2)"));
        }
    }
    {   // w = -1 + 2 gamma/(delta z) + ...
        const ParameterSet& p = preset_p5a();
        out.push_back(make_case("P5-A-7", "P5", kPainleveV, p, 1,
                                seed_of(1, 0, {{E(0), G(-1)}, {E(-1), G(2) * p.gamma / p.delta}}), constant_top,
                                "P5 bounded branch w = -1 + 2 gamma/(delta z) + O(1/z^2)"));
    }
    {   // Leading term only: the printed constant term is branch-dependent for this preset.
        const ParameterSet& p = preset_p5a();
        const G root = sqrt_or_throw(-p.delta / p.alpha, "sqrt(-delta/alpha)");
        out.push_back(make_case("P5-A-8-l2", "P5", kPainleveV, p, 1, seed_of(1, 2, {{E(1), root}}), linear_top,
                                "P5 growing branch w = (-1)^l sqrt(-delta/alpha) z + O(1), leading term only"));
    }
    {   // w = (-1)^l sqrt(-delta/alpha) z + 2 + (-1)^l gamma/(2 sqrt(-alpha delta)) + ...
        const ParameterSet& p = preset_p5b();
        const G root = sqrt_or_throw(-p.delta / p.alpha, "sqrt(-delta/alpha)");
        const G root2 = sqrt_or_throw(-p.alpha * p.delta, "sqrt(-alpha delta)");
        for (int l : {1, 2}) {
            const G c1 = sign_power(l) * root;
            const G c0 = G(2) + sign_power(l) * p.gamma / (G(2) * root2);
            out.push_back(make_case("P5-B-8-l" + std::to_string(l), "P5", kPainleveV, p, 1,
                                    seed_of(1, l, {{E(1), c1}, {E(0), c0}}), linear_top,
                                    "P5 growing branch w = (-1)^l sqrt(-delta/alpha) z + 2 + "
                                    "(-1)^l gamma/(2 sqrt(-alpha delta)) + O(1/z)"));
        }
    }
    {   // delta = 0, t = sqrt(z):  w = (-1)^l sqrt(-gamma/alpha) t + 1 + ...
        const ParameterSet& p = preset_p5c();
        const G root = sqrt_or_throw(-p.gamma / p.alpha, "sqrt(-gamma/alpha)");
        for (int l : {3, 4}) {
            out.push_back(make_case("P5-C-10-l" + std::to_string(l), "P5-delta0", kPainleveV, p, 2,
                                    seed_of(1, l, {{E(1), sign_power(l) * root}, {E(0), G(1)}}), linear_top,
                                    "P5 (delta = 0) w = (-1)^l sqrt(-gamma/alpha) sqrt(z) + 1 + O(z^(-1/2)), in t = sqrt(z)"));
        }
    }
    {   // delta = 0, t = sqrt(z):  w = (-1)^l sqrt(-beta/gamma)/t + beta/(gamma t^2) + ...
        const ParameterSet& p = preset_p5c();
        const G root = sqrt_or_throw(-p.beta / p.gamma, "sqrt(-beta/gamma)");
        for (int l : {3, 4}) {
            out.push_back(make_case("P5-C-9-l" + std::to_string(l), "P5-delta0", kPainleveV, p, 2,
                                    seed_of(1, l, {{E(-1), sign_power(l) * root}, {E(-2), p.beta / p.gamma}}),
                                    irregular_top,
                                    "P5 (delta = 0) w = (-1)^l sqrt(-beta/gamma)/sqrt(z) + beta/(gamma z) + O(z^(-3/2)), in t = sqrt(z)"));
        }
    }
    {   // w = i^l (-delta/gamma)^(1/4) - ((-1)^l beta/(4 sqrt(-gamma delta)) + alpha/(4 gamma))/z + ...
        const ParameterSet& p = preset_p3a();
        const auto fourth = exact_fourth_root(-p.delta / p.gamma);
        if (!fourth) throw std::invalid_argument("(-delta/gamma)^(1/4) is not a Gaussian rational");
        const G root = sqrt_or_throw(-p.gamma * p.delta, "sqrt(-gamma delta)");
        for (int l : {1, 2, 3, 4}) {
            const G c0 = i_power(l) * *fourth;
            const G c1 = -(sign_power(l) * p.beta / (G(4) * root) + p.alpha / (G(4) * p.gamma));
            out.push_back(make_case("P3-A-13-l" + std::to_string(l), "P3", kPainleveIII, p, 1,
                                    seed_of(1, l, {{E(0), c0}, {E(-1), c1}}), irregular_top,
                                    "P3 w = i^l (-delta/gamma)^(1/4) - ((-1)^l beta/(4 sqrt(-gamma delta)) + "
                                    "alpha/(4 gamma))/z + O(1/z^2)"));
        }
    }
    return out;
}

inline CorpusCase find_case(const std::vector<CorpusCase>& cases, const std::string& id) {
    for (const auto& c : cases)
        if (c.id == id) return c;
    throw std::out_of_range("no corpus case '" + id + "'");
}

} // namespace gevrey
