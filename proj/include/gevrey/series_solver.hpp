#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffsum.hpp"
#include "errors.hpp"
#include "puiseux_series.hpp"

namespace gevrey {

/// Leading term(s) fixing a branch of a formal solution. Only the leading
/// coefficient is taken on trust; every other prescribed coefficient is
/// re-derived and cross-checked.
struct SeedExpansion {
    std::int64_t ramification = 1;
    std::map<RamifiedExponent, GaussianRational, std::greater<>> prescribed; // descending
    int branch = 0; // l, informational

    RamifiedExponent leading_exponent() const { return prescribed.begin()->first; }
    const GaussianRational& leading_coefficient() const { return prescribed.begin()->second; }

    void validate() const {
        if (ramification <= 0) throw std::invalid_argument("seed ramification must be positive");
        if (prescribed.empty()) throw std::invalid_argument("seed has no terms");
        if (leading_coefficient().is_zero()) throw std::invalid_argument("seed leading coefficient is zero");
        for (const auto& [e, c] : prescribed) {
            const __int128 scaled = static_cast<__int128>(e.numerator) * ramification;
            if (scaled % e.ramification != 0)
                throw std::invalid_argument("seed exponent " + e.to_string() + " is off the grid 1/" +
                                            std::to_string(ramification));
        }
    }

    PuiseuxSeries as_series() const {
        PuiseuxSeries::Terms t;
        for (const auto& [e, c] : prescribed) t.emplace(e.on_grid(ramification).numerator, c);
        return PuiseuxSeries(ramification, std::move(t));
    }
};

struct ExtensionStep {
    RamifiedExponent slot;
    GaussianRational coefficient;
    /// Factor multiplying the unknown coefficient at `balance_exponent`.
    GaussianRational characteristic_value;
    RamifiedExponent balance_exponent;
    bool prescribed = false;
    /// Leading exponent of F(partial sum) after this step. When
    /// `residual_attained` is false the residual vanished through the
    /// evaluated window and this is an upper bound.
    RamifiedExponent residual_leading;
    bool residual_attained = true;
};

struct ExtendedSolution {
    SeedExpansion seed;
    /// Known coefficients, truncated below the last computed slot.
    PuiseuxSeries series;
    std::vector<ExtensionStep> steps;
    std::size_t derived = 0; // steps not prescribed by the seed

    std::vector<std::pair<RamifiedExponent, GaussianRational>> characteristic_values() const {
        std::vector<std::pair<RamifiedExponent, GaussianRational>> out;
        for (const auto& s : steps) out.emplace_back(s.slot, s.characteristic_value);
        return out;
    }
};

namespace detail {

// q (q-1) ... (q-l+1)
inline GaussianRational falling_factorial(const Rational& q, int l) {
    Rational r(1);
    for (int i = 0; i < l; ++i) r *= Rational(q - i);
    return GaussianRational(r);
}

} // namespace detail

/// Extends `seed` by `n` derived coefficients. Each coefficient c at slot q
/// solves  lambda * c = -r, where lambda is the leading coefficient of the
/// first variation on the partial sum applied to z^q and r is the residual
/// coefficient at the same exponent.
inline ExtendedSolution extend(const DiffSum& f, const SeedExpansion& seed, std::size_t n) {
    seed.validate();
    const std::int64_t rho = seed.ramification;
    const LinearDiffOperator variation = first_variation(f);
    if (variation.coefficients.empty()) throw std::invalid_argument("equation does not involve w");

    const RamifiedExponent lead = seed.leading_exponent();
    const RamifiedExponent step(1, rho);
    const RamifiedExponent lowest_prescribed = seed.prescribed.rbegin()->first;

    PuiseuxSeries w = PuiseuxSeries::monomial(lead.on_grid(rho), seed.leading_coefficient());
    ExtendedSolution sol;
    sol.seed = seed;

    std::optional<RamifiedExponent> sigma; // balance exponent minus slot
    RamifiedExponent q = lead - step;
    const auto slot_label = [](const RamifiedExponent& e) { return "z^(" + e.to_string() + ")"; };

    const auto record_residual = [&](const PuiseuxSeries& r, const RamifiedExponent& window_floor) {
        if (sol.steps.empty()) return;
        auto& last = sol.steps.back();
        if (const auto lr = r.leading_exponent()) {
            last.residual_leading = *lr;
            last.residual_attained = true;
        } else {
            last.residual_leading = window_floor - step;
            last.residual_attained = false;
        }
    };

    while (sol.derived < n || q >= lowest_prescribed) {
        const PuiseuxSeries known = w.truncated(q + step);

        // Linear-in-c part of F(w + c z^q).
        PuiseuxSeries lambda_series(rho);
        for (const auto& [l, coeff] : variation.coefficients) {
            std::optional<RamifiedExponent> floor;
            if (sigma) floor = *sigma + RamifiedExponent(l);
            const PuiseuxSeries a = evaluate_on_series(coeff, known, floor);
            const GaussianRational ff = detail::falling_factorial(q.value(), l);
            if (ff.is_zero()) continue;
            lambda_series = series_add(lambda_series, series_mul(a, PuiseuxSeries::monomial(q - RamifiedExponent(l), ff)));
        }
        if (!sigma) {
            const auto le = lambda_series.leading_exponent();
            if (!le)
                throw ResonanceError("linearization at " + slot_label(q) +
                                     " has no certified leading term; the seed does not fix a triangular recurrence");
            sigma = *le - q;
        }
        const RamifiedExponent balance = q + *sigma;
        if (const auto le = lambda_series.leading_exponent(); le && *le > balance)
            throw ResonanceError("linearization at " + slot_label(q) + " rose above the balance exponent");
        if (const auto vb = lambda_series.valid_below(); vb && *vb > balance)
            throw ResonanceError("characteristic value at " + slot_label(q) + " is not certified");
        const GaussianRational lambda = lambda_series.empty() ? GaussianRational{} : lambda_series.coefficient(balance);

        const PuiseuxSeries residual = evaluate_on_series(f, w, balance);
        record_residual(residual, balance);
        if (const auto re = residual.leading_exponent(); re && *re > balance) {
            const std::string msg = "residual " + residual.coefficient(*re).to_string() + "*" + slot_label(*re) +
                                    " cannot be cancelled by the coefficient at " + slot_label(q);
            if (sol.steps.empty()) throw SeedInconsistent("seed fails the leading-order balance: " + msg);
            throw ResonanceError(msg);
        }
        const GaussianRational r = residual.empty() ? GaussianRational{} : residual.coefficient(balance);

        const auto pit = seed.prescribed.find(q);
        const bool is_prescribed = pit != seed.prescribed.end();
        GaussianRational c;
        if (!lambda.is_zero()) {
            c = -r / lambda;
            if (is_prescribed && !(c == pit->second))
                throw SeedInconsistent("prescribed coefficient " + pit->second.to_string() + " at " + slot_label(q) +
                                       " differs from the derived value " + c.to_string());
        } else if (!r.is_zero()) {
            throw ResonanceError("characteristic value vanishes at " + slot_label(q) + " and the residual " +
                                 r.to_string() + " cannot be cancelled");
        } else if (is_prescribed) {
            c = pit->second;
        } else {
            throw ResonanceError("characteristic value vanishes at " + slot_label(q) +
                                 "; the coefficient is not determined (prescribe it in the seed)");
        }

        if (!c.is_zero()) w = series_add(w, PuiseuxSeries::monomial(q.on_grid(rho), c));
        sol.steps.push_back({q, c, lambda, balance, is_prescribed, balance, true});
        if (!is_prescribed) ++sol.derived;
        q = q - step;
    }

    const RamifiedExponent next_balance = q + *sigma;
    record_residual(evaluate_on_series(f, w, next_balance), next_balance);

    const RamifiedExponent lowest = q + step;
    sol.series = w.truncated(lowest);
    return sol;
}

/// Leading exponent of F evaluated on the partial sum; nullopt when the
/// partial sum solves F exactly.
inline std::optional<RamifiedExponent> residual_order(const DiffSum& f, const ExtendedSolution& sol) {
    return evaluate_on_series(f, sol.series.as_exact()).leading_exponent();
}

struct GrowthEntry {
    std::int64_t s = 0;   // coefficient c_{-s} of z^(-s/rho)
    Rational norm;        // |c_{-s}|^2, exact
    double log_magnitude = 0;
};

/// |c_s| for every nonzero computed coefficient, leading term first.
inline std::vector<GrowthEntry> growth_profile(const ExtendedSolution& sol) {
    if (sol.steps.size() + 1 < 20)
        throw std::invalid_argument("growth_profile needs at least 20 computed coefficients");
    std::vector<GrowthEntry> out;
    const PuiseuxSeries s = sol.series.lifted(sol.seed.ramification);
    for (const auto& [num, c] : s.terms()) out.push_back({-num, c.norm(), log_abs(c)});
    return out;
}

} // namespace gevrey
