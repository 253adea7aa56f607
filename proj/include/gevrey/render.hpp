#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "newton_polygon.hpp"

namespace gevrey {

// SVG -----------------------------------------------------------------------

/// One <polyline> per hull edge, one <circle> per support point and the two
/// vertical boundary rays as <line> elements.
inline std::string render_svg(const NewtonPolygon& p, const std::string& title = "") {
    constexpr double unit = 60, margin = 50;
    int kmax = 0;
    double lo = 0, hi = 0;
    bool first = true;
    const auto widen = [&](double v) {
        lo = first ? v : std::min(lo, v);
        hi = first ? v : std::max(hi, v);
        first = false;
    };
    for (const auto& s : p.support) {
        kmax = std::max(kmax, s.k);
        widen(s.j0.value().get_d());
    }
    for (const auto& v : p.vertices) widen(v.q2.get_d());
    hi += 1.5; // room for the rays
    const double width = 2 * margin + unit * std::max(kmax, 1);
    const double height = 2 * margin + unit * (hi - lo);
    const auto x = [&](double q1) { return margin + unit * q1; };
    const auto y = [&](double q2) { return margin + unit * (hi - q2); };

    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    if (!title.empty()) os << "  <title>" << title << "</title>\n";
    os << "  <g stroke=\"#999\" stroke-width=\"1\">\n"
       << "    <line x1=\"" << x(0) << "\" y1=\"" << y(0) << "\" x2=\"" << x(kmax) + unit / 2 << "\" y2=\"" << y(0)
       << "\"/>\n"
       << "    <line x1=\"" << x(0) << "\" y1=\"" << y(lo) + unit / 2 << "\" x2=\"" << x(0) << "\" y2=\"" << y(hi)
       << "\"/>\n"
       << "  </g>\n";
    os << "  <text x=\"" << x(kmax) + unit / 2 << "\" y=\"" << y(0) - 6 << "\" font-size=\"12\">q1</text>\n"
       << "  <text x=\"" << x(0) + 6 << "\" y=\"" << y(hi) + 12 << "\" font-size=\"12\">q2</text>\n";

    os << "  <g class=\"hull\" fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"2\">\n";
    for (const auto& e : p.edges) {
        os << "    <polyline class=\"edge\" data-slope=\"" << e.slope.get_str() << "\" points=\"" << x(e.from.q1) << ','
           << y(e.from.q2.get_d()) << ' ' << x(e.to.q1) << ',' << y(e.to.q2.get_d()) << "\"/>\n";
    }
    if (!p.vertices.empty()) {
        for (const auto* v : {&p.vertices.front(), &p.vertices.back()}) {
            os << "    <line class=\"ray\" stroke-dasharray=\"4 3\" x1=\"" << x(v->q1) << "\" y1=\"" << y(v->q2.get_d())
               << "\" x2=\"" << x(v->q1) << "\" y2=\"" << y(hi) << "\"/>\n";
        }
    }
    os << "  </g>\n";

    os << "  <g class=\"support\" fill=\"#c0392b\">\n";
    for (const auto& s : p.support) {
        os << "    <circle class=\"point\" cx=\"" << x(s.k) << "\" cy=\"" << y(s.j0.value().get_d())
           << "\" r=\"4\"><title>(" << s.k << ", " << s.j0.to_string() << ")</title></circle>\n";
    }
    os << "  </g>\n</svg>\n";
    return os.str();
}

// ASCII ---------------------------------------------------------------------

/// Character grid for a polygon. Rows run from q2 = top down to q2 = bottom
/// in steps of `row_step`; column of order k is label_width + k * column_step.
struct AsciiLayout {
    Rational top;
    Rational bottom;
    Rational row_step;
    int kmax = 0;
    int label_width = 6;
    int column_step = 6;

    int rows() const { return static_cast<int>(mpz_class((top - bottom) / row_step).get_si()) + 1; }
    int columns() const { return label_width + kmax * column_step + 1; }
};

inline AsciiLayout ascii_layout(const NewtonPolygon& p) {
    AsciiLayout l;
    mpz_class den = 1;
    bool first = true;
    const auto widen = [&](const Rational& v) {
        if (first || v > l.top) l.top = v;
        if (first || v < l.bottom) l.bottom = v;
        first = false;
        den = lcm(den, mpz_class(v.get_den()));
    };
    for (const auto& s : p.support) {
        l.kmax = std::max(l.kmax, s.k);
        widen(s.j0.value());
    }
    for (const auto& v : p.vertices) widen(v.q2);
    l.row_step = Rational(mpz_class(1), den);
    l.top += 1; // one row of ray above the highest point
    return l;
}

/// (row, column) of the point (k, q2); q2 must lie on the layout's grid.
inline std::pair<int, int> ascii_cell(const AsciiLayout& l, int k, const Rational& q2) {
    const Rational r = (l.top - q2) / l.row_step;
    return {static_cast<int>(mpz_class(r).get_si()), l.label_width + k * l.column_step};
}

/// 'o' support point, '+' hull vertex off the support, '.' hull edge,
/// '|' vertical ray. Row labels give q2, the bottom line gives k.
inline std::string render_ascii(const NewtonPolygon& p) {
    const AsciiLayout l = ascii_layout(p);
    std::vector<std::string> grid(l.rows(), std::string(l.columns(), ' '));
    const auto put = [&](int row, int col, char c) {
        if (row >= 0 && row < l.rows() && col >= 0 && col < l.columns()) grid[row][col] = c;
    };

    for (const auto& e : p.edges) {
        const int c0 = ascii_cell(l, e.from.q1, e.from.q2).second;
        const int c1 = ascii_cell(l, e.to.q1, e.to.q2).second;
        for (int c = c0 + 1; c < c1; ++c) {
            const Rational q1 = Rational(c - l.label_width) / l.column_step;
            const Rational q2 = e.from.q2 + e.slope * (q1 - e.from.q1);
            const double row = Rational((l.top - q2) / l.row_step).get_d();
            put(static_cast<int>(std::lround(row)), c, '.');
        }
    }
    if (!p.vertices.empty()) {
        for (const auto* v : {&p.vertices.front(), &p.vertices.back()}) {
            const auto [row, col] = ascii_cell(l, v->q1, v->q2);
            for (int r = 0; r < row; ++r) put(r, col, '|');
        }
    }
    for (const auto& v : p.vertices) {
        const auto [row, col] = ascii_cell(l, v.q1, v.q2);
        put(row, col, '+');
    }
    for (const auto& s : p.support) {
        const auto [row, col] = ascii_cell(l, s.k, s.j0.value());
        put(row, col, 'o');
    }

    std::ostringstream os;
    for (int r = 0; r < l.rows(); ++r) {
        const Rational q2 = l.top - Rational(r) * l.row_step;
        std::string label = q2.get_str();
        label.resize(static_cast<std::size_t>(l.label_width - 1), ' ');
        grid[r].replace(0, label.size(), label);
        grid[r][l.label_width - 1] = ':';
        const auto end = grid[r].find_last_not_of(' ');
        os << grid[r].substr(0, end + 1) << '\n';
    }
    std::string axis(static_cast<std::size_t>(l.columns()), ' ');
    for (int k = 0; k <= l.kmax; ++k) {
        const std::string n = std::to_string(k);
        axis.replace(static_cast<std::size_t>(l.label_width + k * l.column_step), n.size(), n);
    }
    os << std::string(static_cast<std::size_t>(l.label_width - 1), ' ') << "+"
       << std::string(static_cast<std::size_t>(l.kmax * l.column_step + 1), '-') << "> q1\n"
       << axis << '\n';
    return os.str();
}

} // namespace gevrey
