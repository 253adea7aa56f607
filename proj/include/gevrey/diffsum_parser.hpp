#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "diffsum.hpp"
#include "errors.hpp"

namespace gevrey {

/// Named constants substituted at parse time (e.g. alpha -> 1).
using Bindings = std::map<std::string, GaussianRational>;

namespace detail {

// sum    := ['+'|'-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := base ('^' exponent)?
// base   := rational | 'i' | 'z' | 't' | w'... | w'{k} | identifier | '(' sum ')'
// exponent := ['-'] integer | '(' ['-'] rational ')'    (negative/fractional only on z, t)
class DiffSumParser {
public:
    DiffSumParser(std::string_view text, const Bindings& bindings) : text_(text), bindings_(bindings) {}

    DiffSum parse() {
        DiffSum s = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        if (var_) s = s.with_variable(*var_);
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    DiffSum parse_sum() {
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        DiffSum s = parse_term();
        if (negate) s = -s;
        for (;;) {
            if (accept('+'))
                s += parse_term();
            else if (accept('-'))
                s -= parse_term();
            else
                return s;
        }
    }

    DiffSum parse_term() {
        DiffSum t = parse_factor();
        while (accept('*')) t = t * parse_factor();
        return t;
    }

    std::string read_digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Rational parse_unsigned_rational() {
        skip_ws();
        std::string num = read_digits();
        if (num.empty()) fail("expected a number");
        if (accept('/')) {
            skip_ws();
            const std::size_t at = pos_;
            std::string den = read_digits();
            if (den.empty()) fail("expected a denominator");
            if (mpz_class(den) == 0) throw ParseError("zero denominator", at);
            return parse_rational(num + "/" + den);
        }
        return parse_rational(num);
    }

    Rational parse_exponent() {
        if (accept('(')) {
            const bool neg = accept('-');
            Rational r = parse_unsigned_rational();
            if (!accept(')')) fail("expected ')'");
            return neg ? Rational(-r) : r;
        }
        const bool neg = accept('-');
        skip_ws();
        std::string digits = read_digits();
        if (digits.empty()) fail("expected an integer exponent");
        Rational r = parse_rational(digits);
        return neg ? Rational(-r) : r;
    }

    void use_variable(char v) {
        if (var_ && *var_ != v) fail("cannot mix independent variables z and t");
        var_ = v;
    }

    DiffSum parse_factor() {
        bool independent = false;
        DiffSum base = parse_base(independent);
        if (!accept('^')) return base;
        const std::size_t exp_pos = pos_;
        const Rational e = parse_exponent();
        if (independent) {
            const auto& [key, coeff] = *base.terms().begin();
            RamifiedExponent ze = exponent_from_rational(Rational(e * key.z_exp.value()));
            return DiffSum::independent(ze, base.variable());
        }
        if (e.get_den() != 1 || sgn(e) < 0)
            throw ParseError("only z and t take negative or fractional exponents", exp_pos);
        if (e > 64) throw ParseError("exponent too large", exp_pos);
        return pow(base, static_cast<unsigned>(e.get_num().get_ui()));
    }

    DiffSum parse_base(bool& independent) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            DiffSum s = parse_sum();
            if (!accept(')')) fail("expected ')'");
            return s;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return DiffSum::constant(GaussianRational(parse_unsigned_rational()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string ident(text_.substr(start, pos_ - start));
            if (ident == "w") return parse_derivative();
            if (ident == "z" || ident == "t") {
                use_variable(ident[0]);
                independent = true;
                return DiffSum::independent(RamifiedExponent(1), ident[0]);
            }
            if (ident == "i") return DiffSum::constant(GaussianRational::i());
            const auto it = bindings_.find(ident);
            if (it == bindings_.end()) throw ParseError("unbound name '" + ident + "'", start);
            return DiffSum::constant(it->second);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    DiffSum parse_derivative() {
        int order = 0;
        if (pos_ < text_.size() && text_[pos_] == '\'' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '{') {
            pos_ += 2;
            const std::size_t at = pos_;
            std::string digits = read_digits();
            if (digits.empty() || pos_ >= text_.size() || text_[pos_] != '}') throw ParseError("malformed w'{k}", at);
            ++pos_;
            if (digits.size() > 2) throw ParseError("derivative order > 9", at);
            order = std::stoi(digits);
            if (order > 9) throw ParseError("derivative order > 9", at);
        } else {
            const std::size_t at = pos_;
            while (pos_ < text_.size() && text_[pos_] == '\'') {
                ++order;
                ++pos_;
            }
            if (order > 9) throw ParseError("derivative order > 9", at);
        }
        return DiffSum::derivative(order);
    }

    std::string_view text_;
    const Bindings& bindings_;
    std::size_t pos_ = 0;
    std::optional<char> var_;
};

} // namespace detail

/// Parses a differential sum; see README for the grammar.
inline DiffSum parse_diffsum(std::string_view text, const Bindings& bindings = {}) {
    return detail::DiffSumParser(text, bindings).parse();
}

/// Parses a constant (no z, t or w), e.g. "2+i" or "-3/2*i".
inline GaussianRational parse_constant(std::string_view text, const Bindings& bindings = {}) {
    const DiffSum s = parse_diffsum(text, bindings);
    if (s.is_zero()) return {};
    if (s.terms().size() != 1 || s.involves_w() || s.terms().begin()->first.z_exp.numerator != 0)
        throw ParseError("expected a constant", 0);
    return s.terms().begin()->second;
}

} // namespace gevrey
