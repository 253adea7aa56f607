#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "exponent.hpp"

namespace gevrey {

/// Exact complex number re + im*i with rational parts. The coefficient field
/// of every series and differential sum in the library.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {} // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2, exact.
    Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (o.is_real()) {
            re_ *= o.re_;
            im_ *= o.re_;
            return *this;
        }
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero GaussianRational");
        if (o.is_real()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        const Rational n = o.norm();
        *this *= o.conj();
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Text accepted by the differential-sum parser: "3/2", "-i", "2*i",
    /// "(1/2-3*i)".
    std::string to_string() const {
        if (is_real()) return re_.get_str();
        std::string imag_part;
        const Rational abs_im = abs(im_);
        imag_part = abs_im == 1 ? "i" : abs_im.get_str() + "*i";
        if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag_part;
        return "(" + re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + imag_part + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.to_string(); }

private:
    Rational re_{0};
    Rational im_{0};
};

using Complex = GaussianRational;

inline GaussianRational pow(GaussianRational base, unsigned exponent) {
    GaussianRational result(1);
    while (exponent != 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent != 0) base *= base;
    }
    return result;
}

/// i^l for any integer l.
inline GaussianRational i_power(long l) {
    switch (((l % 4) + 4) % 4) {
    case 0: return {1};
    case 1: return GaussianRational::i();
    case 2: return {-1};
    default: return -GaussianRational::i();
    }
}

/// Square root of a non-negative rational, when it is rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0)
        return std::nullopt;
    Rational r{mpz_class(sqrt(num)), mpz_class(sqrt(den))};
    r.canonicalize();
    return r;
}

/// Principal square root (positive real part, or non-negative imaginary part
/// on the negative real axis) when it is a Gaussian rational.
inline std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
    if (z.is_zero()) return GaussianRational{};
    const auto modulus = exact_sqrt(z.norm());
    if (!modulus) return std::nullopt;
    // x^2 = (|z| + re)/2, y^2 = (|z| - re)/2, sign(x*y) = sign(im).
    const auto x = exact_sqrt(Rational((*modulus + z.real()) / 2));
    const auto y = exact_sqrt(Rational((*modulus - z.real()) / 2));
    if (!x || !y) return std::nullopt;
    Rational im = *y;
    if (sgn(z.imag()) < 0) im = -im;
    return GaussianRational{*x, im};
}

/// Principal fourth root, as the principal square root applied twice.
inline std::optional<GaussianRational> exact_fourth_root(const GaussianRational& z) {
    const auto s = exact_sqrt(z);
    if (!s) return std::nullopt;
    return exact_sqrt(*s);
}

/// Natural log of |z| from the exact norm; usable far beyond double range.
inline double log_abs(const GaussianRational& z) {
    if (z.is_zero()) return -INFINITY;
    const Rational n = z.norm();
    long exp_num = 0;
    long exp_den = 0;
    const double mant_num = mpz_get_d_2exp(&exp_num, n.get_num().get_mpz_t());
    const double mant_den = mpz_get_d_2exp(&exp_den, n.get_den().get_mpz_t());
    const double log_norm = std::log(mant_num) - std::log(mant_den) +
                            static_cast<double>(exp_num - exp_den) * std::log(2.0);
    return 0.5 * log_norm;
}

} // namespace gevrey
