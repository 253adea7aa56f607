#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exponent.hpp"
#include "operator.hpp"

namespace gevrey {

/// (k, j_{k,0}): order k and minus the leading exponent of a_k(z).
struct SupportPoint {
    int k = 0;
    RamifiedExponent j0;

    friend bool operator==(const SupportPoint& a, const SupportPoint& b) { return a.k == b.k && a.j0 == b.j0; }
    friend bool operator<(const SupportPoint& a, const SupportPoint& b) {
        return a.k != b.k ? a.k < b.k : a.j0 < b.j0;
    }
};

struct HullVertex {
    int q1 = 0;
    Rational q2;

    friend bool operator==(const HullVertex& a, const HullVertex& b) { return a.q1 == b.q1 && a.q2 == b.q2; }
};

struct PolygonEdge {
    HullVertex from;
    HullVertex to;
    Rational slope;
};

/// Lower boundary of conv( U_k {q1 <= k, q2 >= j_{k,0}} ) within q1 >= 0. The
/// rest of the boundary is the two vertical rays above the first and last
/// vertex.
struct NewtonPolygon {
    std::vector<SupportPoint> support;
    std::vector<HullVertex> vertices; // left to right
    std::vector<PolygonEdge> edges;   // slopes strictly increasing
    std::vector<Rational> positive_slopes;
};

/// Support of an operator in the weighted or Euler basis. Only certified
/// leading terms are used.
inline std::vector<SupportPoint> support(const OperatorOnSeries& op) {
    if (op.basis == Basis::derivative)
        throw std::invalid_argument("support is read in the weighted or euler basis");
    std::vector<SupportPoint> pts;
    for (const auto& [k, a] : op.coefficients) {
        if (a.is_zero()) continue;
        const auto lead = a.leading_exponent();
        if (!lead)
            throw UncertifiedLeading("coefficient of order " + std::to_string(k) +
                                     " has no certified term; extend the series further");
        pts.push_back({k, (-*lead).reduced()});
    }
    return pts;
}

namespace detail {

// Sign of the turn o -> a -> b (positive: counter-clockwise).
inline int turn(const HullVertex& o, const HullVertex& a, const HullVertex& b) {
    const Rational cross = Rational(a.q1 - o.q1) * (b.q2 - o.q2) - Rational(b.q1 - o.q1) * (a.q2 - o.q2);
    return sgn(cross);
}

} // namespace detail

inline NewtonPolygon polygon(const std::vector<SupportPoint>& points) {
    if (points.empty()) throw std::invalid_argument("polygon of an empty support");
    std::map<int, Rational> by_order;
    for (const auto& p : points) {
        if (p.k < 0) throw std::invalid_argument("negative order in support");
        if (!by_order.emplace(p.k, p.j0.value()).second)
            throw std::invalid_argument("more than one support point of order " + std::to_string(p.k));
    }

    // The quadrants reach left, so at abscissa k the set starts at the
    // minimum of j over orders >= k; q1 = 0 is always included.
    std::vector<HullVertex> candidates;
    Rational running;
    bool have = false;
    for (auto it = by_order.rbegin(); it != by_order.rend(); ++it) {
        if (!have || it->second < running) running = it->second;
        have = true;
        candidates.push_back({it->first, running});
    }
    if (candidates.back().q1 != 0) candidates.push_back({0, running});
    std::reverse(candidates.begin(), candidates.end());

    // Monotone chain, lower half; collinear points are dropped.
    std::vector<HullVertex> hull;
    for (const auto& c : candidates) {
        while (hull.size() >= 2 && detail::turn(hull[hull.size() - 2], hull.back(), c) <= 0) hull.pop_back();
        hull.push_back(c);
    }

    NewtonPolygon out;
    out.support = points;
    std::sort(out.support.begin(), out.support.end());
    out.vertices = hull;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        Rational slope = (hull[i + 1].q2 - hull[i].q2) / Rational(hull[i + 1].q1 - hull[i].q1);
        if (sgn(slope) > 0) out.positive_slopes.push_back(slope);
        out.edges.push_back({hull[i], hull[i + 1], std::move(slope)});
    }
    return out;
}

/// {0} united with {1/k_i} over the positive slopes k_i, ascending. The series
/// either converges or has Gevrey order exactly one of these values.
inline std::vector<Rational> gevrey_candidates(const NewtonPolygon& p) {
    std::set<Rational> s{Rational(0)};
    for (const auto& k : p.positive_slopes) s.insert(Rational(1 / k));
    return {s.begin(), s.end()};
}

inline std::string gevrey_interpretation(const std::vector<Rational>& candidates) {
    std::string list;
    for (std::size_t i = 0; i < candidates.size(); ++i) list += (i ? ", " : "") + candidates[i].get_str();
    if (candidates.size() == 1) return "series converges (Gevrey order 0 is the only candidate)";
    return "series converges or has Gevrey order exactly one of {" + list + "}";
}

} // namespace gevrey
