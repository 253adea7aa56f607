#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exponent.hpp"
#include "gaussian_rational.hpp"

namespace gevrey {

/// A finite descending series  sum c_n z^(n/rho)  with an optional certified
/// threshold.
///
/// Exponents are stored as numerators on the grid (1/rho)Z. When the series is
/// truncated, `valid_below()` is the lowest exponent whose coefficient is known
/// exactly; everything strictly below it is unknown (O(z^(valid_below - 1/rho))).
/// An exact series has no threshold: its missing coefficients are zero.
class PuiseuxSeries {
public:
    using Terms = std::map<std::int64_t, GaussianRational, std::greater<>>;

    PuiseuxSeries() = default;
    explicit PuiseuxSeries(std::int64_t rho) : rho_(rho) { check_rho(); }
    PuiseuxSeries(std::int64_t rho, Terms terms, std::optional<std::int64_t> valid_below = std::nullopt)
        : rho_(rho), terms_(std::move(terms)), floor_(valid_below) {
        check_rho();
        normalize();
    }

    static PuiseuxSeries monomial(const RamifiedExponent& e, GaussianRational c = GaussianRational(1)) {
        return PuiseuxSeries(e.ramification, Terms{{e.numerator, std::move(c)}});
    }
    static PuiseuxSeries constant(GaussianRational c) { return monomial(RamifiedExponent(0), std::move(c)); }

    std::int64_t rho() const { return rho_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_exact() const { return !floor_.has_value(); }
    /// No stored (certified nonzero) term.
    bool empty() const { return terms_.empty(); }
    /// Exactly the zero series.
    bool is_zero() const { return terms_.empty() && is_exact(); }

    std::optional<std::int64_t> valid_below_numerator() const { return floor_; }
    std::optional<RamifiedExponent> valid_below() const {
        if (!floor_) return std::nullopt;
        return RamifiedExponent(*floor_, rho_);
    }

    std::optional<RamifiedExponent> leading_exponent() const {
        if (terms_.empty()) return std::nullopt;
        return RamifiedExponent(terms_.begin()->first, rho_);
    }
    const GaussianRational& leading_coefficient() const {
        if (terms_.empty()) throw std::logic_error("leading coefficient of an empty series");
        return terms_.begin()->second;
    }
    std::optional<RamifiedExponent> lowest_exponent() const {
        if (terms_.empty()) return std::nullopt;
        return RamifiedExponent(terms_.rbegin()->first, rho_);
    }

    /// Highest exponent numerator that may carry a nonzero coefficient,
    /// counting the unknown tail; nullopt for the exact zero series.
    std::optional<std::int64_t> upper_numerator() const {
        std::optional<std::int64_t> hi;
        if (!terms_.empty()) hi = terms_.begin()->first;
        if (floor_ && (!hi || *floor_ - 1 > *hi)) hi = *floor_ - 1;
        return hi;
    }

    /// Coefficient at `e`. Throws when `e` is off the grid or below the
    /// certified threshold.
    GaussianRational coefficient(const RamifiedExponent& e) const {
        const auto n = numerator_of(e);
        if (!n) return {};
        if (floor_ && *n < *floor_)
            throw std::out_of_range("coefficient at " + e.to_string() + " is below the certified threshold");
        const auto it = terms_.find(*n);
        return it == terms_.end() ? GaussianRational{} : it->second;
    }

    /// Same series on the finer grid `rho`.
    PuiseuxSeries lifted(std::int64_t rho) const {
        if (rho % rho_ != 0) throw std::invalid_argument("lift target is not a multiple of the ramification");
        const std::int64_t f = rho / rho_;
        if (f == 1) return *this;
        Terms t;
        for (const auto& [n, c] : terms_) t.emplace(n * f, c);
        std::optional<std::int64_t> fl;
        if (floor_) fl = *floor_ * f;
        return PuiseuxSeries(rho, std::move(t), fl);
    }

    /// Smallest grid holding every exponent and the threshold.
    PuiseuxSeries simplified() const {
        std::int64_t g = rho_;
        for (const auto& [n, c] : terms_) g = std::gcd(g, n);
        if (floor_) g = std::gcd(g, *floor_);
        if (g == 1) return *this;
        Terms t;
        for (const auto& [n, c] : terms_) t.emplace(n / g, c);
        std::optional<std::int64_t> fl;
        if (floor_) fl = *floor_ / g;
        return PuiseuxSeries(rho_ / g, std::move(t), fl);
    }

    /// Declares everything below `e` unknown (drops those terms).
    PuiseuxSeries truncated(const RamifiedExponent& e) const {
        const std::int64_t rho = std::lcm(rho_, e.ramification);
        PuiseuxSeries out = lifted(rho);
        const std::int64_t n = e.on_grid(rho).numerator;
        if (!out.floor_ || *out.floor_ < n) out.floor_ = n;
        out.normalize();
        return out;
    }

    /// The stored terms read as an exact finite sum (a partial sum).
    PuiseuxSeries as_exact() const { return PuiseuxSeries(rho_, terms_); }

    /// Terms with exponent <= 0, keeping the threshold.
    PuiseuxSeries regular_part() const {
        Terms t;
        for (const auto& [n, c] : terms_)
            if (n <= 0) t.emplace(n, c);
        return PuiseuxSeries(rho_, std::move(t), floor_);
    }

    /// Equality of values: both series are compared on a common grid.
    friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
        const std::int64_t rho = std::lcm(a.rho_, b.rho_);
        const PuiseuxSeries la = a.lifted(rho);
        const PuiseuxSeries lb = b.lifted(rho);
        return la.floor_ == lb.floor_ && la.terms_ == lb.terms_;
    }

    std::string to_string(char var = 'z') const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [n, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << c.to_string() << '*' << var << "^(" << RamifiedExponent(n, rho_).to_string() << ')';
        }
        if (floor_) {
            if (!first) os << " + ";
            first = false;
            os << "O(" << var << "^(" << RamifiedExponent(*floor_ - 1, rho_).to_string() << "))";
        }
        if (first) os << '0';
        return os.str();
    }

    /// Numerator of `e` on this grid, or nullopt when `e` is off the grid.
    std::optional<std::int64_t> numerator_of(const RamifiedExponent& e) const {
        const __int128 scaled = static_cast<__int128>(e.numerator) * rho_;
        if (scaled % e.ramification != 0) return std::nullopt;
        return static_cast<std::int64_t>(scaled / e.ramification);
    }

private:
    void check_rho() const {
        if (rho_ <= 0) throw std::invalid_argument("ramification must be positive");
    }
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero() || (floor_ && it->first < *floor_))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    std::int64_t rho_ = 1;
    Terms terms_;
    std::optional<std::int64_t> floor_;
};

namespace detail {

inline std::optional<std::int64_t> max_opt(std::optional<std::int64_t> a, std::optional<std::int64_t> b) {
    if (!a) return b;
    if (!b) return a;
    return std::max(*a, *b);
}

} // namespace detail

inline PuiseuxSeries series_add(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    const std::int64_t rho = std::lcm(a.rho(), b.rho());
    const PuiseuxSeries la = a.lifted(rho);
    const PuiseuxSeries lb = b.lifted(rho);
    PuiseuxSeries::Terms t = la.terms();
    for (const auto& [n, c] : lb.terms()) {
        auto [it, inserted] = t.try_emplace(n, c);
        if (!inserted) it->second += c;
    }
    return PuiseuxSeries(rho, std::move(t), detail::max_opt(la.valid_below_numerator(), lb.valid_below_numerator()));
}

inline PuiseuxSeries series_scale(const PuiseuxSeries& a, const GaussianRational& k) {
    PuiseuxSeries::Terms t;
    if (!k.is_zero())
        for (const auto& [n, c] : a.terms()) t.emplace(n, c * k);
    return PuiseuxSeries(a.rho(), std::move(t), a.valid_below_numerator());
}

inline PuiseuxSeries series_neg(const PuiseuxSeries& a) { return series_scale(a, GaussianRational(-1)); }
inline PuiseuxSeries series_sub(const PuiseuxSeries& a, const PuiseuxSeries& b) { return series_add(a, series_neg(b)); }

/// Cauchy product keeping only certified coefficients. With `floor`, terms
/// below it are not computed and the result is truncated there.
inline PuiseuxSeries series_mul(const PuiseuxSeries& a, const PuiseuxSeries& b,
                                std::optional<RamifiedExponent> floor = std::nullopt) {
    std::int64_t rho = std::lcm(a.rho(), b.rho());
    if (floor) rho = std::lcm(rho, floor->ramification);
    const PuiseuxSeries la = a.lifted(rho);
    const PuiseuxSeries lb = b.lifted(rho);

    // Unknown tail of X lives at exponents <= vX - 1; the product's unknown
    // part is bounded by the largest of leadA+UB, leadB+UA, UA+UB.
    std::optional<std::int64_t> unknown_hi;
    const auto va = la.valid_below_numerator();
    const auto vb = lb.valid_below_numerator();
    if (vb && !la.empty()) unknown_hi = detail::max_opt(unknown_hi, la.terms().begin()->first + *vb - 1);
    if (va && !lb.empty()) unknown_hi = detail::max_opt(unknown_hi, lb.terms().begin()->first + *va - 1);
    if (va && vb) unknown_hi = detail::max_opt(unknown_hi, *va + *vb - 2);
    if (la.is_zero() || lb.is_zero()) return PuiseuxSeries(rho);
    std::optional<std::int64_t> result_floor;
    if (unknown_hi) result_floor = *unknown_hi + 1;
    if (floor) {
        const std::int64_t f = floor->on_grid(rho).numerator;
        const bool nothing_dropped = !va && !vb && la.terms().rbegin()->first + lb.terms().rbegin()->first >= f;
        if (!nothing_dropped) result_floor = detail::max_opt(result_floor, f);
    }

    PuiseuxSeries::Terms t;
    if (!la.empty() && !lb.empty()) {
        const std::int64_t b_lead = lb.terms().begin()->first;
        for (const auto& [ea, ca] : la.terms()) {
            if (result_floor && ea + b_lead < *result_floor) break;
            for (const auto& [eb, cb] : lb.terms()) {
                const std::int64_t e = ea + eb;
                if (result_floor && e < *result_floor) break;
                auto [it, inserted] = t.try_emplace(e, ca);
                if (inserted)
                    it->second *= cb;
                else
                    it->second += ca * cb;
            }
        }
    }
    return PuiseuxSeries(rho, std::move(t), result_floor);
}

inline PuiseuxSeries series_pow(const PuiseuxSeries& a, unsigned k) {
    PuiseuxSeries result = PuiseuxSeries::constant(GaussianRational(1)).lifted(a.rho());
    for (unsigned i = 0; i < k; ++i) result = series_mul(result, a);
    return result;
}

/// Term-wise d/dz:  c z^q -> c q z^(q-1).
inline PuiseuxSeries series_diff(const PuiseuxSeries& a) {
    const std::int64_t rho = a.rho();
    PuiseuxSeries::Terms t;
    for (const auto& [n, c] : a.terms()) {
        if (n == 0) continue;
        t.emplace(n - rho, c * GaussianRational(make_rational(n, rho)));
    }
    std::optional<std::int64_t> fl;
    if (auto v = a.valid_below_numerator()) fl = *v - rho;
    return PuiseuxSeries(rho, std::move(t), fl);
}

/// Euler operator D = z d/dz:  c z^q -> c q z^q.
inline PuiseuxSeries euler_apply(const PuiseuxSeries& a) {
    PuiseuxSeries::Terms t;
    for (const auto& [n, c] : a.terms())
        if (n != 0) t.emplace(n, c * GaussianRational(make_rational(n, a.rho())));
    return PuiseuxSeries(a.rho(), std::move(t), a.valid_below_numerator());
}

/// Multiply by z^e.
inline PuiseuxSeries series_shift(const PuiseuxSeries& a, const RamifiedExponent& e) {
    return series_mul(a, PuiseuxSeries::monomial(e));
}

/// Rewrite a series in z as a series in t where z = t^m.
inline PuiseuxSeries substitute_power(const PuiseuxSeries& a, std::int64_t m) {
    if (m <= 0) throw std::invalid_argument("substitution power must be positive");
    PuiseuxSeries::Terms t;
    for (const auto& [n, c] : a.terms()) t.emplace(n * m, c);
    std::optional<std::int64_t> fl;
    if (auto v = a.valid_below_numerator()) fl = *v * m;
    return PuiseuxSeries(a.rho(), std::move(t), fl).simplified();
}

inline PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) { return series_add(a, b); }
inline PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return series_sub(a, b); }
inline PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) { return series_mul(a, b); }

} // namespace gevrey
