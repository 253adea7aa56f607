#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>
#include <string>

#include "gevrey/gevrey.hpp"

namespace gevrey::testing {

inline GaussianRational gr(long re, long im = 0) { return GaussianRational(Rational(re), Rational(im)); }
inline GaussianRational q(long num, long den) { return GaussianRational(make_rational(num, den)); }
inline RamifiedExponent ex(long num, long rho = 1) { return RamifiedExponent(num, rho); }

/// Small Gaussian rationals with numerators in [-3, 3] and denominators 1..3.
inline GaussianRational random_coefficient(std::mt19937& rng, bool allow_zero = false) {
    std::uniform_int_distribution<long> num(-3, 3), den(1, 3);
    for (;;) {
        GaussianRational c(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
        if (allow_zero || !c.is_zero()) return c;
    }
}

/// Exact series with `terms` distinct exponents on the grid 1/rho, numerators in [lo, hi].
inline PuiseuxSeries random_series(std::mt19937& rng, int terms, std::int64_t rho = 1, long lo = -8, long hi = 3) {
    std::uniform_int_distribution<long> e(lo, hi);
    PuiseuxSeries::Terms t;
    while (static_cast<int>(t.size()) < terms) t.emplace(e(rng), random_coefficient(rng));
    return PuiseuxSeries(rho, std::move(t));
}

inline DiffSum random_diffsum(std::mt19937& rng, int max_monomials = 6, int max_order = 2) {
    std::uniform_int_distribution<int> count(1, max_monomials), zexp(-2, 2), order(0, max_order), mult(1, 2),
        factors(0, 3);
    std::vector<DiffMonomial> monos;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        DiffMonomial m{random_coefficient(rng), RamifiedExponent(zexp(rng)), {}};
        const int f = factors(rng);
        for (int k = 0; k < f; ++k) m.derivative_powers[order(rng)] += mult(rng);
        monos.push_back(m);
    }
    return DiffSum(monos);
}

// d/de P(e) at e = 0 from the values P(0), ..., P(d) of a polynomial of degree <= d.
inline GaussianRational derivative_at_zero(const std::vector<GaussianRational>& values) {
    const long d = static_cast<long>(values.size()) - 1;
    GaussianRational out;
    for (long k = 0; k <= d; ++k) {
        // L_k'(0) for nodes 0..d
        Rational weight(0);
        if (k == 0) {
            for (long j = 1; j <= d; ++j) weight -= Rational(1) / Rational(j);
        } else {
            Rational prod(1);
            for (long j = 0; j <= d; ++j)
                if (j != k && j != 0) prod *= Rational(-j) / Rational(k - j);
            weight = prod / Rational(k);
        }
        out += values[static_cast<std::size_t>(k)] * GaussianRational(weight);
    }
    return out;
}

struct Pt {
    Rational x, y;
    friend bool operator==(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }
};

// Lower boundary by pairwise edge validation: the quadrant union has the
// same lower hull as its corner points (k, j_k) and (0, j_k). A pair is an
// edge when no corner lies strictly below its line and no corner on the line
// lies outside the segment.
inline std::vector<HullVertex> brute_force_hull(const std::vector<SupportPoint>& support) {
    std::vector<Pt> pts;
    for (const auto& s : support) {
        pts.push_back({Rational(s.k), s.j0.value()});
        pts.push_back({Rational(0), s.j0.value()});
    }
    const auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
        return sgn(Rational((a.x - o.x) * (b.y - o.y) - (b.x - o.x) * (a.y - o.y)));
    };
    std::vector<std::pair<Pt, Pt>> edges;
    for (const auto& p : pts)
        for (const auto& q : pts) {
            if (!(p.x < q.x)) continue;
            bool ok = true;
            for (const auto& r : pts) {
                const int c = cross(p, q, r);
                if (c < 0 || (c == 0 && (r.x < p.x || r.x > q.x))) ok = false;
                if (!ok) break;
            }
            if (ok && std::find(edges.begin(), edges.end(), std::make_pair(p, q)) == edges.end()) edges.emplace_back(p, q);
        }
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.first.x < b.first.x; });

    std::vector<HullVertex> out;
    if (edges.empty()) {
        const auto low = std::min_element(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.y < b.y; });
        out.push_back({0, low->y});
        return out;
    }
    out.push_back({static_cast<int>(mpz_class(edges.front().first.x).get_si()), edges.front().first.y});
    for (const auto& [p, q] : edges) out.push_back({static_cast<int>(mpz_class(q.x).get_si()), q.y});
    return out;
}

inline std::vector<SupportPoint> random_support(std::mt19937& rng, std::int64_t rho) {
    std::uniform_int_distribution<int> count(1, 8), k(0, 10);
    std::uniform_int_distribution<long> j(-10 * rho, 10 * rho);
    std::set<int> orders;
    const int n = count(rng);
    while (static_cast<int>(orders.size()) < n) orders.insert(k(rng));
    std::vector<SupportPoint> out;
    for (int o : orders) out.push_back({o, RamifiedExponent(j(rng), rho)});
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

} // namespace gevrey::testing
