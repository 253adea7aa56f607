#pragma once

#include <algorithm>
#include <cstdint>
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
#include "puiseux_series.hpp"

namespace gevrey {

/// coeff * z^z_exp * prod_j (w^(j))^(m_j)
struct DiffMonomial {
    GaussianRational coeff{1};
    RamifiedExponent z_exp{0};
    std::map<int, int> derivative_powers; // order j -> multiplicity m_j > 0

    int order() const { return derivative_powers.empty() ? -1 : derivative_powers.rbegin()->first; }
    int degree() const {
        int d = 0;
        for (const auto& [j, m] : derivative_powers) d += m;
        return d;
    }
};

/// A polynomial in z, w, w', ..., w^(n) with Gaussian-rational coefficients,
/// kept in merged canonical form.
class DiffSum {
public:
    struct Key {
        RamifiedExponent z_exp; // reduced
        std::vector<int> powers; // powers[j] = multiplicity of w^(j), no trailing zeros

        friend bool operator<(const Key& a, const Key& b) {
            // Higher derivative order first, then higher powers of the top
            // derivatives, then higher powers of z.
            if (a.powers.size() != b.powers.size()) return a.powers.size() > b.powers.size();
            for (std::size_t j = a.powers.size(); j-- > 0;)
                if (a.powers[j] != b.powers[j]) return a.powers[j] > b.powers[j];
            return a.z_exp > b.z_exp;
        }
        friend bool operator==(const Key& a, const Key& b) { return a.z_exp == b.z_exp && a.powers == b.powers; }
    };
    using Terms = std::map<Key, GaussianRational>;

    DiffSum() = default;
    explicit DiffSum(const std::vector<DiffMonomial>& monomials, char variable = 'z') : variable_(variable) {
        for (const auto& m : monomials) add_term(key_of(m), m.coeff);
    }

    static DiffSum constant(const GaussianRational& c, char variable = 'z') {
        DiffSum s;
        s.variable_ = variable;
        s.add_term(Key{RamifiedExponent(0), {}}, c);
        return s;
    }
    /// The independent variable raised to `e`.
    static DiffSum independent(const RamifiedExponent& e, char variable = 'z') {
        DiffSum s;
        s.variable_ = variable;
        s.add_term(Key{e.reduced(), {}}, GaussianRational(1));
        return s;
    }
    /// The j-th derivative w^(j).
    static DiffSum derivative(int j, char variable = 'z') {
        if (j < 0) throw std::invalid_argument("negative derivative order");
        DiffSum s;
        s.variable_ = variable;
        std::vector<int> p(static_cast<std::size_t>(j) + 1, 0);
        p.back() = 1;
        s.add_term(Key{RamifiedExponent(0), std::move(p)}, GaussianRational(1));
        return s;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    char variable() const { return variable_; }
    DiffSum with_variable(char v) const {
        DiffSum s = *this;
        s.variable_ = v;
        return s;
    }

    /// Highest derivative order present; 0 when w does not occur.
    int order() const {
        int n = 0;
        for (const auto& [k, c] : terms_) n = std::max(n, static_cast<int>(k.powers.size()) - 1);
        return n;
    }
    bool involves_w() const {
        return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return !kv.first.powers.empty(); });
    }
    /// Highest total degree in w and its derivatives.
    int degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, std::accumulate(k.powers.begin(), k.powers.end(), 0));
        return d;
    }

    std::vector<DiffMonomial> monomials() const {
        std::vector<DiffMonomial> out;
        out.reserve(terms_.size());
        for (const auto& [k, c] : terms_) {
            DiffMonomial m{c, k.z_exp, {}};
            for (std::size_t j = 0; j < k.powers.size(); ++j)
                if (k.powers[j] != 0) m.derivative_powers.emplace(static_cast<int>(j), k.powers[j]);
            out.push_back(std::move(m));
        }
        return out;
    }

    /// Formal partial derivative with respect to w^(j).
    DiffSum partial(int j) const {
        DiffSum out;
        out.variable_ = variable_;
        const auto uj = static_cast<std::size_t>(j);
        for (const auto& [k, c] : terms_) {
            if (uj >= k.powers.size() || k.powers[uj] == 0) continue;
            Key nk = k;
            nk.powers[uj] -= 1;
            trim(nk.powers);
            out.add_term(nk, c * GaussianRational(static_cast<long>(k.powers[uj])));
        }
        return out;
    }

    DiffSum& operator+=(const DiffSum& o) {
        merge_variable(o);
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    DiffSum& operator-=(const DiffSum& o) {
        merge_variable(o);
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    DiffSum& operator*=(const GaussianRational& k) {
        if (k.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [key, c] : terms_) c *= k;
        return *this;
    }
    friend DiffSum operator+(DiffSum a, const DiffSum& b) { return a += b; }
    friend DiffSum operator-(DiffSum a, const DiffSum& b) { return a -= b; }
    friend DiffSum operator-(DiffSum a) { return a *= GaussianRational(-1); }
    friend DiffSum operator*(DiffSum a, const GaussianRational& k) { return a *= k; }
    friend DiffSum operator*(const DiffSum& a, const DiffSum& b) {
        DiffSum out;
        out.variable_ = a.variable_ != 'z' ? a.variable_ : b.variable_;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                Key k{ka.z_exp + kb.z_exp, {}};
                k.powers.assign(std::max(ka.powers.size(), kb.powers.size()), 0);
                for (std::size_t j = 0; j < ka.powers.size(); ++j) k.powers[j] += ka.powers[j];
                for (std::size_t j = 0; j < kb.powers.size(); ++j) k.powers[j] += kb.powers[j];
                out.add_term(k, ca * cb);
            }
        return out;
    }
    DiffSum& operator*=(const DiffSum& o) { return *this = *this * o; }

    friend bool operator==(const DiffSum& a, const DiffSum& b) { return a.terms_ == b.terms_; }

private:
    static void trim(std::vector<int>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }
    static Key key_of(const DiffMonomial& m) {
        Key k{m.z_exp.reduced(), {}};
        for (const auto& [j, mult] : m.derivative_powers) {
            if (j < 0) throw std::invalid_argument("negative derivative order");
            if (mult < 0) throw std::invalid_argument("negative multiplicity");
            if (static_cast<std::size_t>(j) >= k.powers.size()) k.powers.resize(static_cast<std::size_t>(j) + 1, 0);
            k.powers[static_cast<std::size_t>(j)] += mult;
        }
        trim(k.powers);
        return k;
    }
    void add_term(const Key& k, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void merge_variable(const DiffSum& o) {
        if (variable_ == 'z') variable_ = o.variable_;
    }

    Terms terms_;
    char variable_ = 'z';
};

inline DiffSum pow(const DiffSum& base, unsigned k) {
    DiffSum r = DiffSum::constant(GaussianRational(1), base.variable());
    for (unsigned i = 0; i < k; ++i) r = r * base;
    return r;
}

/// Total derivative with respect to the independent variable (chain rule,
/// w^(j) -> w^(j+1)).
inline DiffSum total_derivative(const DiffSum& f) {
    DiffSum out = DiffSum().with_variable(f.variable());
    for (const auto& m : f.monomials()) {
        if (m.z_exp.numerator != 0) {
            DiffMonomial d = m;
            d.coeff = m.coeff * GaussianRational(m.z_exp.value());
            d.z_exp = m.z_exp - RamifiedExponent(1);
            out += DiffSum({d}, f.variable());
        }
        for (const auto& [j, mult] : m.derivative_powers) {
            DiffMonomial d = m;
            d.coeff = m.coeff * GaussianRational(static_cast<long>(mult));
            if (--d.derivative_powers[j] == 0) d.derivative_powers.erase(j);
            d.derivative_powers[j + 1] += 1;
            out += DiffSum({d}, f.variable());
        }
    }
    return out;
}

/// Basis in which a linear operator's coefficients are expressed.
enum class Basis {
    derivative, ///< sum a_l(z) d^l/dz^l
    weighted,   ///< sum a_l(z) z^l d^l/dz^l
    euler,      ///< sum a_l(z) D^l, D = z d/dz
};

inline const char* to_string(Basis b) {
    switch (b) {
    case Basis::derivative: return "derivative";
    case Basis::weighted: return "weighted";
    case Basis::euler: return "euler";
    }
    return "?";
}

/// Linear differential operator whose coefficients are differential sums
/// (still functions of w).
struct LinearDiffOperator {
    Basis basis = Basis::derivative;
    std::map<int, DiffSum> coefficients; // order -> coefficient, nonzero only

    int order() const { return coefficients.empty() ? -1 : coefficients.rbegin()->first; }
    DiffSum coefficient(int l) const {
        const auto it = coefficients.find(l);
        return it == coefficients.end() ? DiffSum() : it->second;
    }
};

/// dF/dw = sum_l (dF/dw^(l)) d^l/dz^l.
inline LinearDiffOperator first_variation(const DiffSum& f) {
    LinearDiffOperator op;
    if (!f.involves_w()) return op;
    for (int l = 0; l <= f.order(); ++l) {
        DiffSum c = f.partial(l);
        if (!c.is_zero()) op.coefficients.emplace(l, std::move(c));
    }
    return op;
}

/// Substitute w and its term-wise derivatives into F. The result carries the
/// certified threshold implied by `w`'s; with `floor`, only coefficients at or
/// above it are computed.
inline PuiseuxSeries evaluate_on_series(const DiffSum& f, const PuiseuxSeries& w,
                                        std::optional<RamifiedExponent> floor = std::nullopt) {
    std::int64_t rho = w.rho();
    for (const auto& [k, c] : f.terms()) rho = std::lcm(rho, k.z_exp.ramification);
    if (floor) rho = std::lcm(rho, floor->ramification);
    const PuiseuxSeries lw = w.lifted(rho);

    std::vector<PuiseuxSeries> derivs{lw};
    for (int j = 1; j <= f.order(); ++j) derivs.push_back(series_diff(derivs.back()));

    std::optional<std::int64_t> floor_num;
    if (floor) floor_num = floor->on_grid(rho).numerator;

    PuiseuxSeries result(rho);
    for (const auto& [k, coeff] : f.terms()) {
        std::vector<const PuiseuxSeries*> factors;
        bool vanishes = false;
        for (std::size_t j = 0; j < k.powers.size(); ++j)
            for (int r = 0; r < k.powers[j]; ++r) {
                if (derivs[j].is_zero()) vanishes = true;
                factors.push_back(&derivs[j]);
            }
        if (vanishes) continue;

        // suffix[i] = sum of upper exponent bounds of factors i, i+1, ...
        std::vector<std::int64_t> suffix(factors.size() + 1, 0);
        for (std::size_t i = factors.size(); i-- > 0;) suffix[i] = suffix[i + 1] + *factors[i]->upper_numerator();

        PuiseuxSeries partial = PuiseuxSeries::monomial(k.z_exp, coeff).lifted(rho);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            std::optional<RamifiedExponent> step_floor;
            if (floor_num) step_floor = RamifiedExponent(*floor_num - suffix[i + 1], rho);
            partial = series_mul(partial, *factors[i], step_floor);
        }
        result = series_add(result, partial);
    }
    if (floor_num && result.is_exact()) {
        // Monomials free of w are exact and never dropped; keep the
        // contract that nothing below the floor is reported.
        bool below = !result.empty() && result.terms().rbegin()->first < *floor_num;
        if (below) result = result.truncated(*floor);
    }
    return result;
}

/// Applies a derivative-basis operator whose coefficients are evaluated on
/// `w` to the series `h`.
inline PuiseuxSeries apply_operator(const LinearDiffOperator& op, const PuiseuxSeries& w, const PuiseuxSeries& h) {
    if (op.basis != Basis::derivative) throw std::invalid_argument("apply_operator expects the derivative basis");
    PuiseuxSeries out(std::lcm(w.rho(), h.rho()));
    PuiseuxSeries dh = h;
    int l = 0;
    for (const auto& [order, coeff] : op.coefficients) {
        for (; l < order; ++l) dh = series_diff(dh);
        out = series_add(out, series_mul(evaluate_on_series(coeff, w), dh));
    }
    return out;
}

/// True iff dF/dw^(n) evaluated on `w` has a certified nonzero coefficient.
inline bool partial_highest_nonzero(const DiffSum& f, const PuiseuxSeries& w) {
    if (!f.involves_w()) return false;
    return !evaluate_on_series(f.partial(f.order()), w).empty();
}

struct ChangedVariable {
    DiffSum sum;
    /// The result equals t^multiplier * F(t^m, ...).
    RamifiedExponent multiplier{0};
};

/// Rewrites F(z, w, dw/dz, ...) in t with z = t^m, using
/// d/dz = (1/(m t^(m-1))) d/dt. Fractional powers of t, if any, are cleared by
/// multiplying through by a single monomial t^multiplier.
inline ChangedVariable change_variable(const DiffSum& f, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("change_variable: m must be >= 1");
    if (m == 1) return {f, RamifiedExponent(0)};
    constexpr char t = 't';

    const int n = f.order();
    const DiffSum dz_dt = DiffSum::independent(RamifiedExponent(1 - m), t) * GaussianRational(make_rational(1, m));
    std::vector<DiffSum> dz{DiffSum::derivative(0, t)};
    for (int j = 1; j <= n; ++j) dz.push_back(dz_dt * total_derivative(dz.back()));

    DiffSum out = DiffSum().with_variable(t);
    for (const auto& mono : f.monomials()) {
        DiffSum term = DiffSum::independent(RamifiedExponent(mono.z_exp.numerator * m, mono.z_exp.ramification), t) *
                       mono.coeff;
        for (const auto& [j, mult] : mono.derivative_powers)
            term = term * pow(dz[static_cast<std::size_t>(j)], static_cast<unsigned>(mult));
        out += term;
    }

    std::optional<Rational> frac;
    for (const auto& [k, c] : out.terms()) {
        const Rational v = k.z_exp.value();
        Rational fpart = v - Rational(mpz_class(mpz_class(v.get_num()) / mpz_class(v.get_den())));
        if (sgn(fpart) < 0) fpart += 1;
        if (frac && *frac != fpart)
            throw std::invalid_argument("change_variable: exponents cannot be cleared by one monomial");
        frac = fpart;
    }
    if (!frac || sgn(*frac) == 0) return {out, RamifiedExponent(0)};
    const RamifiedExponent mult = exponent_from_rational(Rational(-*frac));
    return {DiffSum::independent(mult, t) * out, mult};
}

/// Prints in the grammar accepted by parse_diffsum.
inline std::string to_string(const DiffSum& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const char var = f.variable();
    for (const auto& m : f.monomials()) {
        GaussianRational c = m.coeff;
        bool negative = false;
        if (c.is_real() && sgn(c.real()) < 0) negative = true;
        if (!c.is_real() && sgn(c.real()) == 0 && sgn(c.imag()) < 0) negative = true;
        if (negative) c = -c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;

        std::vector<std::string> factors;
        const bool unit = c == GaussianRational(1);
        if (!unit) factors.push_back(c.to_string());
        if (m.z_exp.numerator != 0) {
            const RamifiedExponent e = m.z_exp.reduced();
            std::string s(1, var);
            if (e.ramification != 1)
                s += "^(" + e.to_string() + ")";
            else if (e.numerator != 1)
                s += "^" + e.to_string();
            factors.push_back(s);
        }
        for (const auto& [j, mult] : m.derivative_powers) {
            std::string s = "w";
            if (j <= 3)
                s += std::string(static_cast<std::size_t>(j), '\'');
            else
                s += "'{" + std::to_string(j) + "}";
            if (mult != 1) s += "^" + std::to_string(mult);
            factors.push_back(s);
        }
        if (factors.empty()) factors.emplace_back("1");
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

/// One line per derivative order, highest first.
inline std::string to_string(const LinearDiffOperator& op) {
    std::ostringstream os;
    const char var = op.coefficients.empty() ? 'z' : op.coefficients.begin()->second.variable();
    for (auto it = op.coefficients.rbegin(); it != op.coefficients.rend(); ++it) {
        const int l = it->first;
        std::string basis_elem;
        switch (op.basis) {
        case Basis::derivative:
            basis_elem = l == 0 ? "1" : l == 1 ? std::string("d/d") + var
                                                : "d^" + std::to_string(l) + "/d" + var + "^" + std::to_string(l);
            break;
        case Basis::weighted:
            basis_elem = l == 0 ? "1" : std::string(1, var) + "^" + std::to_string(l) + " d^" + std::to_string(l) +
                                            "/d" + var + "^" + std::to_string(l);
            break;
        case Basis::euler: basis_elem = l == 0 ? "1" : "D^" + std::to_string(l); break;
        }
        os << basis_elem << ": " << to_string(it->second) << '\n';
    }
    return os.str();
}

} // namespace gevrey
