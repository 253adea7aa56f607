#pragma once

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "diffsum.hpp"
#include "errors.hpp"
#include "puiseux_series.hpp"
#include "stirling.hpp"

namespace gevrey {

/// Linear differential operator sum_k a_k(z) B_k with series coefficients,
/// B_k the basis element of order k.
struct OperatorOnSeries {
    Basis basis = Basis::euler;
    std::map<int, PuiseuxSeries> coefficients; // zero coefficients are omitted

    int order() const { return coefficients.empty() ? -1 : coefficients.rbegin()->first; }
    PuiseuxSeries coefficient(int k) const {
        const auto it = coefficients.find(k);
        return it == coefficients.end() ? PuiseuxSeries() : it->second;
    }

    std::string to_string(char var = 'z') const {
        std::ostringstream os;
        for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
            const int k = it->first;
            switch (basis) {
            case Basis::derivative: os << "d^" << k << "/d" << var << "^" << k; break;
            case Basis::weighted: os << var << "^" << k << " d^" << k << "/d" << var << "^" << k; break;
            case Basis::euler: os << "D^" << k; break;
            }
            os << ": " << it->second.to_string(var) << '\n';
        }
        return os.str();
    }
};

namespace detail {

inline void put_nonzero(OperatorOnSeries& op, int k, PuiseuxSeries s) {
    if (!s.is_zero()) op.coefficients.emplace(k, std::move(s));
}

inline std::int64_t common_rho(const OperatorOnSeries& op) {
    std::int64_t rho = 1;
    for (const auto& [k, s] : op.coefficients) rho = std::lcm(rho, s.rho());
    return rho;
}

} // namespace detail

/// Evaluates every coefficient of a differential-sum operator on `w`.
inline OperatorOnSeries evaluate_operator(const LinearDiffOperator& op, const PuiseuxSeries& w) {
    OperatorOnSeries out;
    out.basis = op.basis;
    for (const auto& [l, coeff] : op.coefficients) detail::put_nonzero(out, l, evaluate_on_series(coeff, w));
    return out;
}

/// a_l d^l/dz^l = (a_l z^-l) z^l d^l/dz^l
inline OperatorOnSeries to_weighted_basis(const OperatorOnSeries& op) {
    if (op.basis == Basis::weighted) return op;
    if (op.basis != Basis::derivative) throw std::invalid_argument("to_weighted_basis expects the derivative basis");
    OperatorOnSeries out;
    out.basis = Basis::weighted;
    for (const auto& [l, a] : op.coefficients) detail::put_nonzero(out, l, series_shift(a, RamifiedExponent(-l)));
    return out;
}

/// Euler-basis coefficients  e_k = sum_{l>=k} S1signed(l,k) b_l.
inline OperatorOnSeries to_euler_basis(const OperatorOnSeries& op) {
    if (op.basis == Basis::euler) return op;
    if (op.basis != Basis::weighted) throw std::invalid_argument("to_euler_basis expects the weighted basis");
    OperatorOnSeries out;
    out.basis = Basis::euler;
    const int n = op.order();
    const auto rho = detail::common_rho(op);
    for (int k = 0; k <= n; ++k) {
        PuiseuxSeries e(rho);
        for (const auto& [l, b] : op.coefficients)
            if (l >= k) e = series_add(e, series_scale(b, GaussianRational(stirling1_signed(l, k))));
        detail::put_nonzero(out, k, std::move(e));
    }
    return out;
}

/// Weighted-basis coefficients  b_l = sum_{k>=l} S2(k,l) e_k.
inline OperatorOnSeries from_euler_basis(const OperatorOnSeries& op) {
    if (op.basis != Basis::euler) throw std::invalid_argument("from_euler_basis expects the euler basis");
    OperatorOnSeries out;
    out.basis = Basis::weighted;
    const int n = op.order();
    const auto rho = detail::common_rho(op);
    for (int l = 0; l <= n; ++l) {
        PuiseuxSeries b(rho);
        for (const auto& [k, e] : op.coefficients)
            if (k >= l) b = series_add(b, series_scale(e, GaussianRational(stirling2(k, l))));
        detail::put_nonzero(out, l, std::move(b));
    }
    return out;
}

/// Applies an operator in any basis to `h`.
inline PuiseuxSeries apply_operator(const OperatorOnSeries& op, const PuiseuxSeries& h) {
    PuiseuxSeries out(std::lcm(detail::common_rho(op), h.rho()));
    for (const auto& [k, a] : op.coefficients) {
        PuiseuxSeries term = h;
        for (int i = 0; i < k; ++i) term = op.basis == Basis::euler ? euler_apply(term) : series_diff(term);
        if (op.basis == Basis::weighted) term = series_shift(term, RamifiedExponent(k));
        out = series_add(out, series_mul(a, term));
    }
    return out;
}

/// First variation of F on `w`, written in the weighted basis z^l d^l/dz^l.
inline OperatorOnSeries variation_on_series(const DiffSum& f, const PuiseuxSeries& w) {
    return to_weighted_basis(evaluate_operator(first_variation(f), w));
}

/// L0 = sum_k (dG/dY_k on w) D^k, reached from the first variation through the
/// weighted basis and the signed Stirling numbers of the first kind.
inline OperatorOnSeries build_L0(const DiffSum& f, const PuiseuxSeries& w) {
    if (!partial_highest_nonzero(f, w))
        throw DegenerateLeadingCoefficient(
            "dF/dX_n(z, w, w', ..., w^(n)) vanishes on the series: the top coefficient of the "
            "first variation is zero, so the polygon of L0 is not defined");
    return to_euler_basis(variation_on_series(f, w));
}

} // namespace gevrey
