#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gevrey {

using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
    r.canonicalize();
    return r;
}

/// Parses "p" or "p/q"; the result is canonical.
inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// An exponent numerator/ramification on the grid (1/ramification)Z.
/// Two exponents compare by value (cross-multiplication), so 2/2 == 1/1.
struct RamifiedExponent {
    std::int64_t numerator = 0;
    std::int64_t ramification = 1;

    RamifiedExponent() = default;
    RamifiedExponent(std::int64_t num, std::int64_t rho = 1) : numerator(num), ramification(rho) {
        if (rho <= 0) throw std::invalid_argument("ramification must be positive");
    }

    Rational value() const { return make_rational(numerator, ramification); }

    RamifiedExponent reduced() const {
        const std::int64_t g = std::gcd(numerator, ramification);
        return {numerator / g, ramification / g};
    }

    /// Same value on the finer grid `rho`, which must be a multiple of the current one.
    RamifiedExponent on_grid(std::int64_t rho) const {
        if (rho % ramification != 0) throw std::invalid_argument("grid is not a refinement");
        return {numerator * (rho / ramification), rho};
    }

    friend std::strong_ordering operator<=>(const RamifiedExponent& a, const RamifiedExponent& b) {
        const __int128 lhs = static_cast<__int128>(a.numerator) * b.ramification;
        const __int128 rhs = static_cast<__int128>(b.numerator) * a.ramification;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const RamifiedExponent& a, const RamifiedExponent& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

    friend RamifiedExponent operator+(const RamifiedExponent& a, const RamifiedExponent& b) {
        const std::int64_t rho = std::lcm(a.ramification, b.ramification);
        return RamifiedExponent{a.on_grid(rho).numerator + b.on_grid(rho).numerator, rho}.reduced();
    }
    friend RamifiedExponent operator-(const RamifiedExponent& a) { return {-a.numerator, a.ramification}; }
    friend RamifiedExponent operator-(const RamifiedExponent& a, const RamifiedExponent& b) { return a + (-b); }

    /// Reduced "p" or "p/q".
    std::string to_string() const { return value().get_str(); }
};

inline RamifiedExponent exponent_from_rational(const Rational& r) {
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        throw std::overflow_error("exponent out of range");
    return {r.get_num().get_si(), r.get_den().get_si()};
}

} // namespace gevrey
